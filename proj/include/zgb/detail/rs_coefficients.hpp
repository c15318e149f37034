#pragma once

// Generated by tools/gen_rs_coefficients.py; do not edit by hand.
// Taylor coefficients in z = 2p - 1 of the Riemann-Siegel corrections C0..C3.

#include <array>

namespace zgb::detail {

// Coefficient j multiplies z^(2j).
inline constexpr std::array<double, 23> kC0 = {
    3.82683432365089771728e-1,
    4.3724046807752044936e-1,
    1.32376575480343523324e-1,
    -1.3605026047674188655e-2,
    -1.35676219701035808879e-2,
    -1.62372532314446528285e-3,
    2.97053537333796907831e-4,
    7.94330087952146958802e-5,
    4.65561246145045050371e-7,
    -1.43272516309551057541e-6,
    -1.0354847112312946075e-7,
    1.23579270838617380561e-8,
    1.78810838579549049857e-9,
    -3.39141438992703590694e-11,
    -1.63266339025659051014e-11,
    -3.78510931854122038285e-13,
    9.32742325920172484566e-14,
    5.22184301597813685531e-15,
    -3.35067307274426378952e-16,
    -3.41242652281172649408e-17,
    5.75120334143239916034e-19,
    1.48953013632115054548e-19,
    1.25653727170214168533e-21,
};

// Coefficient j multiplies z^(2j+1).
inline constexpr std::array<double, 24> kC1 = {
    -2.682510262837534703e-2,
    1.37847734263518530499e-2,
    3.84912504822350822287e-2,
    9.87106629906207647201e-3,
    -3.31075976085840433291e-3,
    -1.4647808577954150825e-3,
    -1.32079406248769636752e-5,
    5.92274870184714132322e-5,
    5.98024258537344858771e-6,
    -9.64132245616982635267e-7,
    -1.833473372271441176e-7,
    4.46708756271783359956e-9,
    2.70963508217727432169e-9,
    7.78528865431585104629e-11,
    -2.34376260108936885325e-11,
    -1.58301727899875216422e-12,
    1.21199415737237912466e-13,
    1.45837811611083070176e-14,
    -2.87863052581319175046e-16,
    -8.66286290212372412253e-17,
    -8.43072272713704127156e-19,
    3.63080722309734620017e-19,
    1.16266982128382967194e-20,
    -1.09754867115275318159e-21,
};

// Coefficient j multiplies z^(2j).
inline constexpr std::array<double, 25> kC2 = {
    5.18854283029316849378e-3,
    3.09465838806347460335e-4,
    -1.13359410782293733822e-2,
    2.23304574195814477206e-3,
    5.19663740886233020512e-3,
    3.43991440762083366947e-4,
    -5.91064842747058282173e-4,
    -1.02299725479358574544e-4,
    2.08883922169927554081e-5,
    5.92766549309653595789e-6,
    -1.64238383624362759777e-7,
    -1.51611997009406828617e-7,
    -5.90780369820666796292e-9,
    2.09115148594781889777e-9,
    1.78156495832923510538e-10,
    -1.61640724553538307529e-11,
    -2.38069624966676157072e-12,
    5.39826529554259491818e-14,
    1.97501421969695152733e-14,
    2.3332868732882634831e-16,
    -1.11875176100480802082e-16,
    -4.1640094888837671885e-18,
    4.4460811092918830289e-19,
    2.85461147836371445457e-20,
    -1.1913231430037894305e-21,
};

// Coefficient j multiplies z^(2j+1).
inline constexpr std::array<double, 24> kC3 = {
    -1.33971609071945690427e-3,
    3.74421513637939370466e-3,
    -1.33031789193214681203e-3,
    -2.26546607654717871148e-3,
    9.54849999850673041511e-4,
    6.01003845896360391208e-4,
    -1.01288582867766219533e-4,
    -6.86573344929982564246e-5,
    5.98536679153859815931e-7,
    3.33165985123994712904e-6,
    2.19192891024350810572e-7,
    -7.89088424568149441056e-8,
    -9.41468508129526215165e-9,
    9.57011621088348030188e-10,
    1.87631374534706627968e-10,
    -4.43783767932339932746e-12,
    -2.24267385056173532484e-12,
    -3.62768686573524368941e-14,
    1.76398095508215816078e-14,
    7.96076524678677775729e-16,
    -9.41965149058969076391e-17,
    -7.13310385456965782456e-18,
    3.28991058455462432118e-19,
    4.18073037489845929136e-20,
};

}  // namespace zgb::detail
