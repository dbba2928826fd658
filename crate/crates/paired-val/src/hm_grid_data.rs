//! Embedded lookup grid for the correlation between two paired AUC
//! estimates, indexed by the average rating correlation and the average
//! area, in the spirit of the published look-up table for correlated
//! ROC areas.
//!
//! The grid is precomputed from the equal-variance binormal model with
//! equally correlated positive and negative ratings. In the large-sample
//! limit the correlation between the two empirical areas reduces to
//!
//! ```text
//! r(c, A) = I(c / 2) / I(1 / 2),
//! I(g) = integral of phi2(z, z; t) dt over t in [0, g],  z = Phi^-1(A)
//! ```
//!
//! where `phi2` is the standard bivariate normal density. Rows cover the
//! average correlation 0.00..1.00 in steps of 0.02, columns the average
//! area 0.500..0.975 in steps of 0.025; lookups interpolate bilinearly and
//! clamp outside the grid. The exact boundary rows r(0, A) = 0 and
//! r(1, A) = 1 hold in the model, so interpolation is consistent at the
//! edges.

pub(crate) const CORR_STEP: f64 = 0.02;
pub(crate) const AREA_MIN: f64 = 0.500;
pub(crate) const AREA_STEP: f64 = 0.025;
pub(crate) const N_CORR: usize = 51;
pub(crate) const N_AREA: usize = 20;

pub(crate) const AUC_CORR_GRID: [[f64; N_AREA]; N_CORR] = [
    [
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
        0.000000000000,
    ],
    [
        0.019098911495,
        0.019084809294,
        0.019042326424,
        0.018970926148,
        0.018869686674,
        0.018737257423,
        0.018571791489,
        0.018370846577,
        0.018131241988,
        0.017848851589,
        0.017518299679,
        0.017132503299,
        0.016681960392,
        0.016153594572,
        0.015528775313,
        0.014779676611,
        0.013861915935,
        0.012697555229,
        0.011126940705,
        0.008710655664,
    ],
    [
        0.038199733280,
        0.038172263252,
        0.038089505851,
        0.037950403399,
        0.037753139120,
        0.037495050432,
        0.037172494983,
        0.036780654065,
        0.036313248629,
        0.035762127901,
        0.035116664544,
        0.034362843564,
        0.033481843821,
        0.032447733194,
        0.031223513246,
        0.029753833016,
        0.027950232752,
        0.025656991121,
        0.022554089136,
        0.017756491863,
    ],
    [
        0.057304377363,
        0.057264258432,
        0.057143388706,
        0.056940206021,
        0.056652026586,
        0.056274916137,
        0.055803490807,
        0.055230624763,
        0.054547027616,
        0.053740631820,
        0.052795691246,
        0.051691422090,
        0.050399884640,
        0.048882537405,
        0.047084315656,
        0.044922706506,
        0.042265583197,
        0.038879790321,
        0.034284647343,
        0.027144446075,
    ],
    [
        0.076414759199,
        0.076362695461,
        0.076205831328,
        0.075942117228,
        0.075568031404,
        0.075078409866,
        0.074466183486,
        0.073721991807,
        0.072833624518,
        0.071785211215,
        0.070556028216,
        0.069118697905,
        0.067436379411,
        0.065458193130,
        0.063111347667,
        0.060286592040,
        0.056808646409,
        0.052367464550,
        0.046321827780,
        0.036881484343,
    ],
    [
        0.095532799420,
        0.095469480737,
        0.095278697605,
        0.094957930696,
        0.094502850352,
        0.093907106345,
        0.093162002721,
        0.092256019934,
        0.091174123334,
        0.089896759336,
        0.088398375933,
        0.086645188002,
        0.084591687207,
        0.082174951214,
        0.079304838622,
        0.075845843820,
        0.071580150327,
        0.066121557960,
        0.058668857319,
        0.046974604282,
    ],
    [
        0.114660425584,
        0.114586528158,
        0.114363860633,
        0.113989452115,
        0.113458196058,
        0.112762600924,
        0.111892404421,
        0.110834006307,
        0.109569647136,
        0.108076215277,
        0.106323487284,
        0.104271467663,
        0.101866230017,
        0.099033128039,
        0.095665083092,
        0.091600876911,
        0.086580874122,
        0.080143650516,
        0.071328981350,
        0.057430838348,
    ],
    [
        0.133799573935,
        0.133715760862,
        0.133463204390,
        0.133038500758,
        0.132435798434,
        0.131646510847,
        0.130658871789,
        0.129457281417,
        0.128021358778,
        0.126324564544,
        0.124332168014,
        0.121998170878,
        0.119260493225,
        0.116033106217,
        0.112192441953,
        0.107552168904,
        0.101811650674,
        0.094435361409,
        0.084305467957,
        0.068257257351,
    ],
    [
        0.152952191193,
        0.152859112992,
        0.152578625445,
        0.152106911094,
        0.151437406156,
        0.150560476573,
        0.149462916469,
        0.148127210051,
        0.146530461698,
        0.144642839699,
        0.142425277274,
        0.139825990856,
        0.136775026198,
        0.133175335372,
        0.128887343539,
        0.123700261640,
        0.117273369069,
        0.108998352515,
        0.097601612194,
        0.079460974227,
    ],
    [
        0.172120236362,
        0.172018531489,
        0.171712034692,
        0.171196534429,
        0.170464788186,
        0.169506163158,
        0.168306079765,
        0.166845192333,
        0.165098200795,
        0.163032121101,
        0.160603728266,
        0.157755680646,
        0.154410442967,
        0.150460333017,
        0.145750284871,
        0.140045762992,
        0.132966977167,
        0.123834331896,
        0.111220740442,
        0.091049148076,
    ],
    [
        0.191305682576,
        0.191195977918,
        0.190865359122,
        0.190309240594,
        0.189519735342,
        0.188485261677,
        0.187189933908,
        0.185612664840,
        0.183725863395,
        0.181493537743,
        0.178868488986,
        0.175788053845,
        0.172167422999,
        0.167888685514,
        0.162781832969,
        0.156589348722,
        0.148893484209,
        0.138945057366,
        0.125166214887,
        0.103028988465,
    ],
    [
        0.210510518979,
        0.210393430331,
        0.210040543639,
        0.209446919677,
        0.208604061921,
        0.207499490726,
        0.206116083412,
        0.204431101803,
        0.202414780300,
        0.200028268176,
        0.197220583065,
        0.193923985423,
        0.190046712091,
        0.185461049146,
        0.179982626253,
        0.173331764410,
        0.165053963503,
        0.154332340126,
        0.139441438099,
        0.115407760008,
    ],
    [
        0.229736752645,
        0.229612885172,
        0.229239552915,
        0.228611483803,
        0.227719607380,
        0.226550597971,
        0.225086166491,
        0.223302016383,
        0.221166326936,
        0.218637541538,
        0.215661090719,
        0.212164412652,
        0.208049123351,
        0.203178151282,
        0.197353376045,
        0.190273827469,
        0.181449555173,
        0.169998048463,
        0.154049857731,
        0.128192787226,
    ],
    [
        0.248986410547,
        0.248856359230,
        0.248464373298,
        0.247804868972,
        0.246868238075,
        0.245640361780,
        0.244101856557,
        0.242226962035,
        0.239981924587,
        0.237322638683,
        0.234191149809,
        0.230510336141,
        0.226175538308,
        0.221040791654,
        0.214894868160,
        0.207416429254,
        0.198081469001,
        0.185944111551,
        0.168994971355,
        0.141391459698,
    ],
    [
        0.268261541577,
        0.268125891644,
        0.267717014779,
        0.267029036954,
        0.266051849069,
        0.264770592918,
        0.263164863798,
        0.261207533964,
        0.258863041729,
        0.256084893418,
        0.252811957003,
        0.248962820996,
        0.244426908130,
        0.239049843754,
        0.232607964623,
        0.224760537267,
        0.214950987353,
        0.202172523335,
        0.184280331429,
        0.155011237518,
    ],
    [
        0.287564218623,
        0.287423545971,
        0.286999513017,
        0.286285977256,
        0.285272366012,
        0.283943136326,
        0.282276936840,
        0.280245370670,
        0.277811195471,
        0.274925693842,
        0.271524769065,
        0.267522998090,
        0.262804254966,
        0.257206256341,
        0.250493605484,
        0.242307197471,
        0.232059468216,
        0.218685346537,
        0.199909550419,
        0.169059657061,
    ],
    [
        0.306896540712,
        0.306751412313,
        0.306313931432,
        0.305577709152,
        0.304531747094,
        0.303159872979,
        0.301439864510,
        0.299342155598,
        0.296827953095,
        0.293846483811,
        0.290330904256,
        0.286192065469,
        0.281308673413,
        0.275511055085,
        0.268552810769,
        0.260057536728,
        0.249408348340,
        0.235484716765,
        0.215886306089,
        0.183544337077,
    ],
    [
        0.326260635224,
        0.326111609519,
        0.325662363373,
        0.324906283799,
        0.323831985083,
        0.322422721842,
        0.320655477680,
        0.318499618887,
        0.315914933717,
        0.312848764511,
        0.309231743871,
        0.304971289883,
        0.299941332125,
        0.293965344338,
        0.286786682557,
        0.278012765354,
        0.266999146513,
        0.252572846772,
        0.232214346958,
        0.198472985123,
    ],
    [
        0.345658660183,
        0.345506287467,
        0.345046934365,
        0.344273786431,
        0.343175109459,
        0.341733641908,
        0.339925651227,
        0.337719539236,
        0.335073810058,
        0.331934096165,
        0.328228733892,
        0.323862008450,
        0.318703475550,
        0.312570309048,
        0.305196407198,
        0.296174179819,
        0.284833466961,
        0.269952030842,
        0.248897497953,
        0.213853404354,
    ],
    [
        0.365092806630,
        0.364937629428,
        0.364469804449,
        0.363682338648,
        0.362563188630,
        0.361094634352,
        0.359252306093,
        0.357003745875,
        0.354306310344,
        0.351104099865,
        0.347323386797,
        0.342865630475,
        0.337596425826,
        0.331327216827,
        0.323783257679,
        0.314543165594,
        0.302913002911,
        0.287624649350,
        0.265939666267,
        0.229693500688,
    ],
    [
        0.384565301094,
        0.384407854524,
        0.383933170607,
        0.383134100803,
        0.381998332265,
        0.380507744788,
        0.378637411472,
        0.376354120673,
        0.373614220334,
        0.370360459550,
        0.366517283506,
        0.361983639409,
        0.356621584826,
        0.350237420169,
        0.342548596154,
        0.333121200152,
        0.321239540297,
        0.305593173488,
        0.283344847441,
        0.246001290360,
    ],
    [
        0.404078408160,
        0.403919220292,
        0.403439269301,
        0.402631274497,
        0.401482693733,
        0.399975065640,
        0.398082987104,
        0.395772600369,
        0.392999385490,
        0.389704924121,
        0.385812075475,
        0.381217594977,
        0.375780436370,
        0.369302358848,
        0.361493876637,
        0.351909856147,
        0.339814961660,
        0.323860170183,
        0.301117131680,
        0.262784907897,
    ],
    [
        0.423634433147,
        0.423474025349,
        0.422990379122,
        0.422176105187,
        0.421018472665,
        0.419498738648,
        0.417591105722,
        0.415261178940,
        0.412463713292,
        0.409139309719,
        0.405209486964,
        0.400569135465,
        0.395074548613,
        0.388523562482,
        0.380620647885,
        0.370910804777,
        0.358641250227,
        0.342428307222,
        0.319260710437,
        0.280052614526,
    ],
    [
        0.443235724907,
        0.443074612189,
        0.442588823555,
        0.441770884924,
        0.440607917638,
        0.439080957501,
        0.437163895623,
        0.434821910131,
        0.432009175707,
        0.428665502162,
        0.424711317466,
        0.420039980198,
        0.414505576614,
        0.407902653295,
        0.399930556471,
        0.390125819342,
        0.377720494197,
        0.361300358605,
        0.337779883271,
        0.297812807054,
    ],
    [
        0.462884678754,
        0.462723370102,
        0.462236973885,
        0.461417955221,
        0.460253329011,
        0.458723970618,
        0.456803543400,
        0.454456910126,
        0.451637811832,
        0.448285459557,
        0.444319444325,
        0.439631932193,
        0.434075265106,
        0.427441349083,
        0.419425350064,
        0.409556779020,
        0.397054891260,
        0.380479210136,
        0.356679065015,
        0.316074027236,
    ],
    [
        0.482583739531,
        0.482422738233,
        0.481937252241,
        0.481119710071,
        0.479957061900,
        0.478430084088,
        0.476512296834,
        0.474168360399,
        0.471351730701,
        0.468001215098,
        0.464035825541,
        0.459346881023,
        0.453785451468,
        0.447141466386,
        0.439106880936,
        0.429205672872,
        0.416646753345,
        0.399967865293,
        0.375962793264,
        0.334844971665,
    ],
    [
        0.502335404830,
        0.502175208806,
        0.501692134793,
        0.500878599122,
        0.499721529325,
        0.498201664770,
        0.496292467959,
        0.493958510746,
        0.491153114294,
        0.487814880058,
        0.483862502785,
        0.479186805894,
        0.473638068925,
        0.467004923904,
        0.458977109703,
        0.449074604101,
        0.436498511644,
        0.419769451376,
        0.395635736229,
        0.354134502234,
    ],
    [
        0.522142228379,
        0.521983330494,
        0.521504155124,
        0.520697131021,
        0.519549205522,
        0.518041143583,
        0.516146436312,
        0.513829682505,
        0.511044220737,
        0.507728646995,
        0.503801604629,
        0.499153778943,
        0.493635149985,
        0.487033746146,
        0.479038109328,
        0.469165794566,
        0.456612721912,
        0.439887225973,
        0.415702700965,
        0.373951657181,
    ],
    [
        0.542006823610,
        0.541849711992,
        0.541375907776,
        0.540577876950,
        0.539442629455,
        0.537951018984,
        0.536076652392,
        0.533784271991,
        0.531027387728,
        0.527744793181,
        0.523855350017,
        0.519249968790,
        0.513778830125,
        0.507230067355,
        0.499292069397,
        0.489481589601,
        0.476992070075,
        0.460324583775,
        0.436168642022,
        0.394305662783,
    ],
    [
        0.561931867417,
        0.561777025765,
        0.561310051999,
        0.560523474349,
        0.559404408525,
        0.557933860656,
        0.556085641323,
        0.553824754149,
        0.551105036186,
        0.547865684271,
        0.544026051976,
        0.539477644342,
        0.534071351755,
        0.527596135707,
        0.519741300686,
        0.510024463133,
        0.497639378178,
        0.481085063745,
        0.457038670545,
        0.415205945733,
    ],
    [
        0.581920104124,
        0.581768012023,
        0.581309315711,
        0.580536630872,
        0.579437222499,
        0.577992313425,
        0.576176006762,
        0.573953686449,
        0.571279674153,
        0.568093778232,
        0.564316121605,
        0.559839178880,
        0.554515068466,
        0.548134317819,
        0.540388240054,
        0.530797023142,
        0.518557610684,
        0.502172356709,
        0.478318063862,
        0.436662146246,
    ],
    [
        0.601974349693,
        0.601825482912,
        0.601376499688,
        0.600620128561,
        0.599543827687,
        0.598129101419,
        0.596350435046,
        0.594173713044,
        0.591553900966,
        0.588431629548,
        0.584728072348,
        0.580337054446,
        0.575112449596,
        0.568847103582,
        0.561235455674,
        0.551802017482,
        0.539749881174,
        0.523590313370,
        0.500012275602,
        0.458684131966,
    ],
    [
        0.622097496165,
        0.621952326968,
        0.621514482008,
        0.620776828289,
        0.619727061364,
        0.618347032494,
        0.616611699620,
        0.614487569196,
        0.611930411710,
        0.608881893722,
        0.605264524574,
        0.600973866553,
        0.595866085131,
        0.589737111346,
        0.582285652638,
        0.573042340097,
        0.561219459465,
        0.545342952800,
        0.522126946391,
        0.481282012712,
    ],
    [
        0.642292516383,
        0.642151513831,
        0.641726222766,
        0.641009674469,
        0.639989846486,
        0.638649002944,
        0.636962665755,
        0.634898086020,
        0.632412001990,
        0.629447332104,
        0.625928210498,
        0.621752329239,
        0.616778690966,
        0.610807093483,
        0.603541678956,
        0.594521037659,
        0.582969779186,
        0.567434471448,
        0.544667915164,
        0.504466156150,
    ],
    [
        0.662562469003,
        0.662426099256,
        0.662014769085,
        0.661321700062,
        0.660335196701,
        0.659038002520,
        0.657406295580,
        0.655408195536,
        0.653001573030,
        0.650130817063,
        0.646721979453,
        0.642675280496,
        0.637853114558,
        0.632059942362,
        0.625006531992,
        0.616241316667,
        0.605004445861,
        0.589869252714,
        0.567641231165,
        0.528247204450,
    ],
    [
        0.682910503824,
        0.682779230448,
        0.682383260450,
        0.681716031923,
        0.680766221691,
        0.679517119788,
        0.677945653462,
        0.676020936088,
        0.673702137148,
        0.670935337533,
        0.667648803557,
        0.663745688107,
        0.659092341001,
        0.653498696765,
        0.646683365365,
        0.638206551046,
        0.627327245530,
        0.612651877122,
        0.591053166678,
        0.552636092016,
    ],
    [
        0.703339867470,
        0.703214151738,
        0.702834934390,
        0.702195896481,
        0.701286132880,
        0.700089547851,
        0.698583911756,
        0.696739458137,
        0.694516823607,
        0.691864004967,
        0.688711783800,
        0.684966655915,
        0.680499499557,
        0.675126548781,
        0.668575496356,
        0.660420290287,
        0.649942153954,
        0.635787133165,
        0.614910230561,
        0.577644064374,
    ],
    [
        0.723853909442,
        0.723734210646,
        0.723373132545,
        0.722764625822,
        0.721898249521,
        0.720758590466,
        0.719324356962,
        0.717567030471,
        0.715448884909,
        0.712920059731,
        0.709914156583,
        0.706341430568,
        0.702077870683,
        0.696946851220,
        0.690686413865,
        0.682886268177,
        0.672853346471,
        0.659280028872,
        0.639219182655,
        0.603282698323,
    ],
    [
        0.744456088594,
        0.744342864350,
        0.744001307145,
        0.743425664182,
        0.742606005215,
        0.741527668595,
        0.740170396324,
        0.738507046869,
        0.736501703542,
        0.734106877975,
        0.731259300752,
        0.727873408779,
        0.723830893591,
        0.718963125594,
        0.713019786966,
        0.705608412159,
        0.696065208548,
        0.683135804165,
        0.663987049148,
        0.629563923442,
    ],
    [
        0.765149980046,
        0.765043686610,
        0.764723027943,
        0.764182574898,
        0.763412954897,
        0.762400327429,
        0.761125564905,
        0.759563033252,
        0.757678799235,
        0.755427979024,
        0.752750745179,
        0.749566145144,
        0.745762174396,
        0.741179070705,
        0.735579474114,
        0.728590853409,
        0.719582347089,
        0.707359944072,
        0.689221138974,
        0.656500045094,
    ],
    [
        0.785939282607,
        0.785840375190,
        0.785541989650,
        0.785039047864,
        0.784322782316,
        0.783380243920,
        0.782193533189,
        0.780738655374,
        0.778983836766,
        0.776887033337,
        0.774392176910,
        0.771423360564,
        0.767875494895,
        0.763598571909,
        0.758369533053,
        0.751837937652,
        0.743409602584,
        0.731958192888,
        0.714929061353,
        0.684103769043,
    ],
    [
        0.806827826715,
        0.806736759808,
        0.806462019902,
        0.805998907530,
        0.805339308082,
        0.804471234882,
        0.803378115251,
        0.802037727090,
        0.800420634358,
        0.798487871079,
        0.796187449973,
        0.793448951338,
        0.790174822045,
        0.786225711098,
        0.781394231505,
        0.775354236822,
        0.767552062162,
        0.756936569363,
        0.741118744572,
        0.712388227838,
    ],
    [
        0.827819582990,
        0.827736810690,
        0.827487087833,
        0.827066121501,
        0.826466498309,
        0.825677265697,
        0.824683277562,
        0.823464219274,
        0.821993172748,
        0.820234491369,
        0.818140594861,
        0.815646998974,
        0.812664318186,
        0.809064777486,
        0.804658058698,
        0.799144561624,
        0.792015073644,
        0.782301383014,
        0.767798456130,
        0.741367009124,
    ],
    [
        0.848918671416,
        0.848844647763,
        0.848621313287,
        0.848244809791,
        0.847708473925,
        0.847002459706,
        0.846113148465,
        0.845022269425,
        0.843705604952,
        0.842131072271,
        0.840255828800,
        0.838021780792,
        0.835348352105,
        0.832120279262,
        0.828165737819,
        0.823213975095,
        0.816804260680,
        0.808059251686,
        0.794976824372,
        0.771054186075,
    ],
    [
        0.870129371245,
        0.870064550566,
        0.869868976755,
        0.869539254803,
        0.869069520712,
        0.868451108329,
        0.867672028416,
        0.866716192051,
        0.865562266839,
        0.864181981585,
        0.862537566832,
        0.860577781399,
        0.858231510993,
        0.855396956199,
        0.851922239485,
        0.847567807249,
        0.841925539090,
        0.834217120454,
        0.822662861771,
        0.801464350129,
    ],
    [
        0.891456131680,
        0.891400968941,
        0.891234530098,
        0.890953912094,
        0.890554100148,
        0.890027682003,
        0.889364401044,
        0.888550489889,
        0.887567688548,
        0.886391788535,
        0.884990433830,
        0.883319705112,
        0.881318613410,
        0.878899793302,
        0.875932796317,
        0.872211670926,
        0.867385134521,
        0.860782282035,
        0.850865990003,
        0.832612646275,
    ],
    [
        0.912903583422,
        0.912858534592,
        0.912722608132,
        0.912493422023,
        0.912166861126,
        0.911736842013,
        0.911194945123,
        0.910529866057,
        0.909726606871,
        0.908765276425,
        0.907619277517,
        0.906252489432,
        0.904614723330,
        0.902634035620,
        0.900202918749,
        0.897151478960,
        0.893189601548,
        0.887762398837,
        0.879596067021,
        0.864514811130,
    ],
    [
        0.934476551163,
        0.934442073589,
        0.934338041173,
        0.934162622355,
        0.933912652654,
        0.933583453308,
        0.933168547545,
        0.932659237226,
        0.932043978674,
        0.931307456383,
        0.930429182593,
        0.929381319667,
        0.928125165406,
        0.926605204317,
        0.924738412178,
        0.922393462794,
        0.919345844382,
        0.915165526825,
        0.908863416308,
        0.897187214100,
    ],
    [
        0.956180067137,
        0.956156619937,
        0.956085868642,
        0.955966561933,
        0.955796537625,
        0.955572598410,
        0.955290317402,
        0.954943747924,
        0.954524995476,
        0.954023582279,
        0.953425486096,
        0.952711644838,
        0.951855541551,
        0.950819114146,
        0.949545395603,
        0.947944192705,
        0.945861139330,
        0.943000141392,
        0.938678858565,
        0.930646901936,
    ],
    [
        0.978019385834,
        0.978007430294,
        0.977971353836,
        0.977910515528,
        0.977823807783,
        0.977709592526,
        0.977565601296,
        0.977388786087,
        0.977175099310,
        0.976919166972,
        0.976613794113,
        0.976249194976,
        0.975811749002,
        0.975281892470,
        0.974630321913,
        0.973810599804,
        0.972743159224,
        0.971275165454,
        0.969053746067,
        0.964911647050,
    ],
    [
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
        1.000000000000,
    ],
];
