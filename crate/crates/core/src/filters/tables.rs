#![allow(clippy::excessive_precision, clippy::unreadable_literal)]
//! Scaling filters g_0..g_{L-1}, computed offline at high precision.
//!
//! Daubechies filters are the minimum-phase spectral factor (largest taps
//! first); LA(8) is the root assignment with the smallest phase nonlinearity;
//! coiflets were refined by Newton iteration on their defining moment
//! conditions. Every table is checked by `validate_filter` in the tests.

pub(super) const DB2: [f64; 4] = [
    4.8296291314453414337e-1,
    8.3651630373780790558e-1,
    2.2414386804201338103e-1,
    -1.2940952255126038117e-1,
];

pub(super) const DB3: [f64; 6] = [
    3.32670552950082616e-1,
    8.0689150931109257649e-1,
    4.598775021184915701e-1,
    -1.350110200102545887e-1,
    -8.5441273882026661693e-2,
    3.5226291885709536603e-2,
];

pub(super) const DB4: [f64; 8] = [
    2.3037781330889650086e-1,
    7.1484657055291564709e-1,
    6.3088076792985890788e-1,
    -2.7983769416859854211e-2,
    -1.8703481171909308408e-1,
    3.0841381835560763627e-2,
    3.2883011666885199735e-2,
    -1.0597401785069032105e-2,
];

pub(super) const DB5: [f64; 10] = [
    1.6010239797419291448e-1,
    6.0382926979718967054e-1,
    7.2430852843777292773e-1,
    1.3842814590132073151e-1,
    -2.4229488706638203186e-1,
    -3.2244869584638374648e-2,
    7.7571493840045713523e-2,
    -6.2414902127982742742e-3,
    -1.2580751999081999469e-2,
    3.335725285473771278e-3,
];

pub(super) const DB6: [f64; 12] = [
    1.1154074335010946362e-1,
    4.9462389039845308568e-1,
    7.5113390802109535068e-1,
    3.1525035170919762909e-1,
    -2.2626469396543982008e-1,
    -1.2976686756726193556e-1,
    9.7501605587323049102e-2,
    2.7522865530305728626e-2,
    -3.1582039317486029565e-2,
    5.5384220116149613925e-4,
    4.7772575109455106396e-3,
    -1.0773010853084795649e-3,
];

pub(super) const DB7: [f64; 14] = [
    7.785205408500917902e-2,
    3.9653931948191730654e-1,
    7.2913209084623511992e-1,
    4.6978228740519312247e-1,
    -1.4390600392856497541e-1,
    -2.2403618499387498264e-1,
    7.1309219266830264751e-2,
    8.0612609151083071913e-2,
    -3.802993693501441358e-2,
    -1.6574541630666880654e-2,
    1.2550998556099840613e-2,
    4.2957797292136652113e-4,
    -1.8016407040474909153e-3,
    3.5371379997452024845e-4,
];

pub(super) const DB8: [f64; 16] = [
    5.4415842243104009955e-2,
    3.1287159091429997066e-1,
    6.7563073629728980681e-1,
    5.8535468365420671277e-1,
    -1.5829105256349305667e-2,
    -2.8401554296154692652e-1,
    4.7248457391328277036e-4,
    1.2874742662047845886e-1,
    -1.736930100180754617e-2,
    -4.4088253930794751507e-2,
    1.3981027917398281649e-2,
    8.7460940474057767164e-3,
    -4.8703529934515743104e-3,
    -3.917403733769470463e-4,
    6.7544940645056936637e-4,
    -1.1747678412476953373e-4,
];

pub(super) const DB9: [f64; 18] = [
    3.8077947363878346589e-2,
    2.4383467461259035373e-1,
    6.048231236901111119e-1,
    6.5728807805130053808e-1,
    1.3319738582500757619e-1,
    -2.9327378327917490881e-1,
    -9.6840783222976460514e-2,
    1.4854074933810638014e-1,
    3.0725681479333379212e-2,
    -6.7632829061329973676e-2,
    2.5094711483145195759e-4,
    2.2361662123679097205e-2,
    -4.7232047577513972779e-3,
    -4.2815036824634298345e-3,
    1.8476468830562264766e-3,
    2.3038576352319596721e-4,
    -2.5196318894271013697e-4,
    3.9347320316271599481e-5,
];

pub(super) const DB10: [f64; 20] = [
    2.6670057900555553587e-2,
    1.8817680007769148902e-1,
    5.2720118893172558648e-1,
    6.8845903945360356574e-1,
    2.8117234366057746075e-1,
    -2.4984642432731537942e-1,
    -1.959462743773770435e-1,
    1.2736934033579326008e-1,
    9.305736460357235116e-2,
    -7.1394147166397087145e-2,
    -2.9457536821875812858e-2,
    3.321267405934100174e-2,
    3.6065535669561696554e-3,
    -1.0733175483330575044e-2,
    1.3953517470529011658e-3,
    1.9924052951850561172e-3,
    -6.8585669495971162656e-4,
    -1.1646685512928545095e-4,
    9.3588670320069591334e-5,
    -1.3264202894521244812e-5,
];

pub(super) const LA8: [f64; 8] = [
    -7.5765714789502213228e-2,
    -2.9635527646002491764e-2,
    4.9761866763277498998e-1,
    8.0373875180513208088e-1,
    2.978577956053060514e-1,
    -9.9219543576633532585e-2,
    -1.2603967262031303754e-2,
    3.2223100604051467872e-2,
];

pub(super) const COIF1: [f64; 6] = [
    -1.5655728135791992526e-2,
    -7.2732619512526448024e-2,
    3.8486484686485774725e-1,
    8.5257202021160042045e-1,
    3.3789766245748176967e-1,
    -7.2732619512526448024e-2,
];

pub(super) const COIF2: [f64; 12] = [
    -7.2054944552034699507e-4,
    -1.8232088709110320946e-3,
    5.6114348193688342456e-3,
    2.3680171946847768806e-2,
    -5.9434418646431087307e-2,
    -7.6488599078280754278e-2,
    4.1700518442323904805e-1,
    8.1272363544941349534e-1,
    3.8611006682276285042e-1,
    -6.7372554723725593805e-2,
    -4.146493678687177401e-2,
    1.6387336463203640427e-2,
];

pub(super) const COIF3: [f64; 18] = [
    -3.4599773197272773883e-5,
    -7.0983302506379005611e-5,
    4.6621695982040286947e-4,
    1.1175187708306302235e-3,
    -2.5745176881367970103e-3,
    -9.0079761367306238987e-3,
    1.5880544863669450942e-2,
    3.4555027573297733013e-2,
    -8.2301927106299818487e-2,
    -7.1799821619154834013e-2,
    4.2848347637736998101e-1,
    7.9377722262608717479e-1,
    4.0517690240911819927e-1,
    -6.1123390002972541277e-2,
    -6.5771911281469367184e-2,
    2.3452696142077166243e-2,
    7.7825964256727457566e-3,
    -3.7935128643808016755e-3,
];

pub(super) const COIF4: [f64; 24] = [
    -1.7849909144933466813e-6,
    -3.2596479400307506783e-6,
    3.1229861599195265305e-5,
    6.2338854312787181126e-5,
    -2.599743371222568032e-4,
    -5.8902022463321647799e-4,
    1.266561078925660206e-3,
    3.7514346971460863492e-3,
    -5.6582838001308837069e-3,
    -1.5211728187697211597e-2,
    2.5082253337949606818e-2,
    3.9334422605589146331e-2,
    -9.622042453595263696e-2,
    -6.6627472366817156604e-2,
    4.3438603311435654244e-1,
    7.8223893442428258983e-1,
    4.1530842700068227313e-1,
    -5.607731960356925566e-2,
    -8.1266710249193723345e-2,
    2.6682304669604832607e-2,
    1.6068947131575026513e-2,
    -7.3461679362680497689e-3,
    -1.6294924252267858123e-3,
    8.9231390253700296443e-4,
];

pub(super) const COIF5: [f64; 30] = [
    -9.604010112767892125e-8,
    -1.6237995172048335175e-7,
    2.0612203985788781567e-6,
    3.7007277113394795164e-6,
    -2.1270221672515613819e-5,
    -4.1219861924265502197e-5,
    1.4035632812373242699e-4,
    3.0185794166824474986e-4,
    -6.3755892612588110917e-4,
    -1.6616273039298787746e-3,
    2.4315754425382884906e-3,
    6.7615202206204168024e-3,
    -9.1595073386761629949e-3,
    -1.9758391600965465139e-2,
    3.2674799467057350954e-2,
    4.1287530472117831469e-2,
    -1.0556315130733722647e-1,
    -6.2037751574981950893e-2,
    4.3798230665916331793e-1,
    7.742936228603274516e-1,
    4.2157126673075435177e-1,
    -5.2046670253554756651e-2,
    -9.1921588060086083296e-2,
    2.8169744270532351894e-2,
    2.3408322118927783078e-2,
    -1.0131584846900274915e-2,
    -4.1593126275786396555e-3,
    2.1782943778456947604e-3,
    3.5857774116175769127e-4,
    -2.1208186206749399965e-4,
];
