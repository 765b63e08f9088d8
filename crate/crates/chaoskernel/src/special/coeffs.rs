// Generated by tools/gen_series.py. Do not edit.

/// u(l) = l / (1 - (2/sqrt l) tan(sqrt l / 2)) in powers of l.
pub(crate) const U_COEFFS: [f64; 16] = [
    -12.0, // -12
    1.2, // 6/5
    0.0014285714285714286, // 1/700
    1.5873015873015872e-05, // 1/63000
    1.906823335394764e-07, // 37/194040000
    2.338930910359482e-09, // 59/25225200000
    2.8872194405074223e-11, // 2753/95351256000000
    3.571315429391993e-13, // 827/2315673360000000
    4.42047537429322e-15, // 8386459/1897184870380800000000
    5.472772850949323e-17, // 28033727/512239915002816000000000
    6.776082929875777e-19, // 14529522883/21442362842017877760000000000
    8.389982952227201e-21, // 163546417/19493057129107161600000000000
    1.038836464879061e-22, // 47497385017/457217152292873516544000000000000
    1.2862771591113873e-24, // 170551314127/132592974164933319797760000000000000
    1.5926573772797444e-26, // 2025465606865817/127175225240554144350823526400000000000000
    1.9720154000047433e-28, // 264083452315137289/1339155121783035140014171732992000000000000000
];

/// g(l) = (sqrt l / 2) cot(sqrt l / 2) in powers of l.
pub(crate) const G_COEFFS: [f64; 16] = [
    1.0, // 1
    -0.08333333333333333, // -1/12
    -0.001388888888888889, // -1/720
    -3.306878306878307e-05, // -1/30240
    -8.267195767195768e-07, // -1/1209600
    -2.08767569878681e-08, // -1/47900160
    -5.284190138687493e-10, // -691/1307674368000
    -1.3382536530684679e-11, // -1/74724249600
    -3.3896802963225827e-13, // -3617/10670622842880000
    -8.586062056277845e-15, // -43867/5109094217170944000
    -2.174868698558062e-16, // -174611/802857662698291200000
    -5.5090028283602295e-18, // -77683/14101100039391805440000
    -1.3954464685812522e-19, // -236364091/1693824136731743669452800000
    -3.534707039629467e-21, // -657931/186134520519971831808000000
    -8.953517427037546e-23, // -3392780147/37893265687455865519472640000000
    -2.267952452337683e-24, // -1723168255201/759790291646040068357842010112000000
];

/// c(l) = l^2 / (4 (1 - cos sqrt l - (sqrt l / 2) sin sqrt l)) in powers of l.
pub(crate) const C_COEFFS: [f64; 16] = [
    6.0, // 6
    0.4, // 2/5
    0.015952380952380954, // 67/4200
    0.0005079365079365079, // 4/7875
    1.4454923383494811e-05, // 16829/1164240000
    3.8835503121217407e-07, // 29389/75675600000
    1.0131576032936577e-08, // 58549/5778864000000
    2.6042191686227076e-10, // 6332047/24314570280000000
    6.644416584787793e-12, // 75634119703/11383109222284800000000
    1.6890409153008774e-13, // 86519417489/512239915002816000000000
    4.285851257928742e-15, // 551392666556561/128654177052107266560000000000
    1.0865453889980354e-16, // 1588506850583/14619792846830371200000000000
    2.7534007244878423e-18, // 32731452997658119/11887645959614711430144000000000000
    6.975869483467207e-20, // 51533000008247503/738732284633199924587520000000000000
    1.7671847718829584e-21, // 122586611675941380349/69368304676665896918631014400000000000000
    4.4765497712696136e-23, // 3330441418951320710011/74397506765724174445231762944000000000000000
];

/// th(x) / x in powers of x^2.
pub(crate) const TH_OVER_X: [f64; 16] = [
    1.0, // 1
    -0.3333333333333333, // -1/3
    0.13333333333333333, // 2/15
    -0.05396825396825397, // -17/315
    0.021869488536155203, // 62/2835
    -0.008863235529902197, // -1382/155925
    0.003592128036572481, // 21844/6081075
    -0.0014558343870513183, // -929569/638512875
    0.000590027440945586, // 6404582/10854718875
    -0.00023912911424355248, // -443861162/1856156927625
    9.691537956929451e-05, // 18888466084/194896477400625
    -3.927832388331683e-05, // -113927491862/2900518163668125
    1.5918905069328964e-05, // 58870668456604/3698160658676859375
    -6.451689215655431e-06, // -8374643517010684/1298054391195577640625
    2.6147711512907546e-06, // 689005380505609448/263505041412702261046875
    -1.0597268320104654e-06, // -129848163681107301953/122529844256906551386796875
];

/// (x - th x) / x^3 in powers of x^2.
pub(crate) const X_MINUS_TH_OVER_X3: [f64; 16] = [
    0.3333333333333333, // 1/3
    -0.13333333333333333, // -2/15
    0.05396825396825397, // 17/315
    -0.021869488536155203, // -62/2835
    0.008863235529902197, // 1382/155925
    -0.003592128036572481, // -21844/6081075
    0.0014558343870513183, // 929569/638512875
    -0.000590027440945586, // -6404582/10854718875
    0.00023912911424355248, // 443861162/1856156927625
    -9.691537956929451e-05, // -18888466084/194896477400625
    3.927832388331683e-05, // 113927491862/2900518163668125
    -1.5918905069328964e-05, // -58870668456604/3698160658676859375
    6.451689215655431e-06, // 8374643517010684/1298054391195577640625
    -2.6147711512907546e-06, // -689005380505609448/263505041412702261046875
    1.0597268320104654e-06, // 129848163681107301953/122529844256906551386796875
    -4.294911078273806e-07, // -1736640792209901647222/4043484860477916195764296875
];

/// sh^2(x/2) / (x^2 ch x) in powers of x^2.
pub(crate) const SH2_HALF_OVER_X2_CH: [f64; 16] = [
    0.25, // 1/4
    -0.10416666666666667, // -5/48
    0.04236111111111111, // 61/1440
    -0.017175099206349208, // -277/16128
    0.006961116622574956, // 50521/7257600
    -0.0028212484050157663, // -540553/191600640
    0.0011434095475824147, // 199360981/174356582400
    -0.00046340646368871094, // -3878302429/8369115955200
    0.00018781156692629724, // 2404879675441/12804747411456000
    -7.611716110898831e-05, // -14814847529501/194632160654131200
    3.084912343885026e-05, // 69348874393137901/2248001455555215360000
    -1.2502678804729624e-05, // -238685140977801337/19090720053330444288000
    5.067144860786013e-06, // 4087072509293123892361/806582922253211271168000000
    -2.05363645992835e-06, // -13181680435827682794403/6418701991825554957926400000
    8.32307507564014e-07, // 441543893249023104553682821/530505719624382117272616960000000
    -3.373215272831601e-07, // -2088463430347521052196056349/6191313810204553650993364992000000
];
