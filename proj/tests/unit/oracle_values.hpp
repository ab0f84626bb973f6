#pragma once
// Generated by tests/oracles/reference_values.py (mpmath, 40 digits). Do not edit by hand.

namespace oracle {

// Gamma function.
inline constexpr double kGamma_0p5 = 1.7724538509055160273;
inline constexpr double kGamma_m0p5 = -3.5449077018110320546;
inline constexpr double kGamma_m3p5 = 0.27008820585226910892;
inline constexpr double kGamma_0p125 = 7.5339415987976119047;
inline constexpr double kGamma_9p5 = 119292.46199460900709;
inline constexpr double kGamma_m4p5 = -0.060019601300504246427;
inline constexpr double kGamma_25p3 = 1622777117670872872600000.0;

// c_{gamma,d} = pi^{-d/2} 2^{-gamma} Gamma((d-gamma)/2) / Gamma(gamma/2).
inline constexpr double kRieszConst_0p25_d1 = 0.14927036108294766127;
inline constexpr double kRieszConst_0p5_d1 = 0.39894228040143267794;
inline constexpr double kRieszConst_0p75_d1 = 1.0662193213524481036;
inline constexpr double kRieszConst_1_d2 = 0.15915494309189533577;
inline constexpr double kRieszConst_1p5_d2 = 0.33296793550170026196;
inline constexpr double kRieszConst_2p5_d1 = -0.53192304053524357059;

// (-Delta)^{gamma/2} of the unit Gaussian, d = 1 (quadrature; checked against Kummer's form).
inline constexpr double kFracLap_0p5_x0 = 0.82217895866245855234;
inline constexpr double kFracLap_0p5_x1 = 0.35641123356856729289;
inline constexpr double kFracLap_0p5_x10 = -0.016120282341082345726;
inline constexpr double kFracLap_1_x0 = 0.79788456080286535588;
inline constexpr double kFracLap_1p5_x2 = -0.31901851769123674853;

// I_gamma of the unit Gaussian, d = 1.
inline constexpr double kRiesz_0p5_x0 = 1.7200799746490390708;
inline constexpr double kRiesz_0p5_x3 = 0.61634157924531725313;
inline constexpr double kRiesz_0p2_x1 = 0.7940638372969806071;

// I_gamma of the unit Gaussian, d = 2 (radial).
inline constexpr double kRiesz2d_1_r0 = 1.2533141373155002512;
inline constexpr double kRiesz2d_1_r1p5 = 0.77173156380659101335;
inline constexpr double kRiesz2d_0p5_r1 = 0.71702549244650064174;

// I_{gamma,1} of the unit Gaussian, d = 1 (Taylor-corrected multiplier, k1 = floor(gamma)).
inline constexpr double kIntegrable_0p5_x1 = 0.36763278380493776704;
inline constexpr double kIntegrable_0p5_x4 = 0.0141958671722506619;
inline constexpr double kIntegrable_1p5_x1 = -0.0095132131563479969929;
inline constexpr double kIntegrable_1p5_x3 = 0.054553910418156246571;
inline constexpr double kIntegrable_2p5_x1 = -0.1403541971532366589;
inline constexpr double kIntegrable_2p5_x2 = -0.032465194160054135451;

// H_{y0}(x) = c (|x - y0|^{gamma-1} - |x|^{gamma-1}), d = 1, gamma = 0.5, y0 = 1, x = 2.
inline constexpr double kH_0p5_y1_x2 = 0.11684748862755453447;

// H_{y0} for gamma = 1.5 (k1 = 1), y0 = 1: the transform (e^{-i y0 xi} - 1 + i y0 xi) |xi|^{-1.5}
// inverted in closed form, c (|x - y0|^{0.5} - |x|^{0.5} + 0.5 y0 x |x|^{-1.5}).
inline constexpr double kH_1p5_y1_x2 = 0.048399814518769074542;
inline constexpr double kH_1p5_y1_xm1 = 0.068447674108785459924;
inline constexpr double kH_1p5_y1_x0p5 = -0.56418958354775628695;

}  // namespace oracle
