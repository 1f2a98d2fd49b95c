#pragma once
// Generated by tests/oracles/compute_oracles.py (mpmath, 50 digits). Do not edit.

namespace oracle {
inline constexpr double kCoxLinearXNever1e4 = -8.2105403569775159444;
inline constexpr double kCoxLinearYNever1e4 = -0.99897905805749659874;
inline constexpr double kCoxLinearVNever1e4 = 7.2115612989200193457;
inline constexpr double kCoxLinearPosTail1At100 = 3.4318743263803240425;
inline constexpr double kCoxLinearSqCapAbsAt100 = 3.5455799652604334236;
inline constexpr double kCoxQuadraticLog1e4 = 2.2619016234695018928;
inline constexpr double kCoxInverseLinearLog1e4 = 0.3862943561210570772;
inline constexpr double kCoxInverseLinearDrift1e4 = 0.49999999500099985002;
inline constexpr double kPowCHalf = 2.0;
inline constexpr double kSurvivalNever = 0.3678794411714423216;
inline constexpr double kGammaExample = 0.29078770245142021577;
inline constexpr double kV1Example = 0.29078770245142021577;
inline constexpr double kHarmonic1e4 = 9.7876060360443822642;
inline constexpr double kAltHarmonic1e4 = -0.69309718305994529692;
inline constexpr double kLog2 = 0.69314718055994530942;
inline constexpr double kMinusHalfNoFiringAfter1 = 0.98425389653708978625;
inline constexpr double kSumKappa100 = 0.12064549785556467042;
inline constexpr double kKappa2 = 0.072060878604293377622;
inline constexpr double kKappa10 = 2.5724394841209766539e-12;
inline constexpr double kParetoExpMomentAlpha2 = 1.2130613194252668472;
inline constexpr int kSchedule56[] = {1, 6, 13, 20, 29, 37, 47, 56, 66, 77, 88, 98, 110, 121, 133, 144, 156, 169, 181, 193, 206, 219, 232, 245, 258, 271, 284, 298, 311, 325, 339, 352, 366, 380, 395, 409, 423, 437, 452, 466, 481, 495, 510, 525, 540, 555, 570, 585, 600, 615, 630, 645, 661, 676, 691, 707, 722, 738, 754, 769, 785, 801, 817, 832, 848, 864, 880, 896, 912, 929, 945, 961, 977, 993, 1010, 1026, 1043, 1059, 1075, 1092, 1109, 1125, 1142, 1158, 1175, 1192, 1209, 1225, 1242, 1259, 1276, 1293, 1310, 1327, 1344, 1361, 1378, 1395, 1412, 1429};
}  // namespace oracle
