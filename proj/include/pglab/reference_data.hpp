#pragma once

// Published reference results for the power-gated 45 nm 4x4 array multiplier
// case study. The verifier (report.hpp) recomputes every derivable entry from
// the raw delays/powers; this header is the single home of the embedded data.
// The static_asserts pin the values the rest of the project depends on.

namespace pglab {

// Conventional gating sizing sweep: footer width vs delay and drop.
struct ConventionalRow {
  double w_nm;       // sleep transistor width (nm)
  double delay_s;    // gated critical-path delay (s)
  double vst_mv;     // virtual-ground drop (mV)
  double dd_pct;     // printed delay degradation vs the ungated delay (%)
};

inline constexpr ConventionalRow kConventionalSizing[] = {
    {135.0, 3.4112e-10, 250.0, 43.11},
    {270.0, 2.9149e-10, 173.0, 22.28},
    {400.0, 2.7531e-10, 134.0, 15.50},
    {540.0, 2.6676e-10, 108.0, 11.91},
    {700.0, 2.6052e-10, 89.0, 9.29},
};

// CBSTD sizing sweep: critical-cluster footer width vs delay and drop.
struct CbstdRow {
  double w_nm;
  double delay_s;
  double vst_mv;
  double shift_pct;  // printed shift from the best-case delay (%)
};

inline constexpr CbstdRow kCbstdSizing[] = {
    {100.0, 3.1152e-10, 206.0, 19.57},
    {135.0, 3.0060e-10, 172.0, 15.38},
    {270.0, 2.8680e-10, 111.0, 10.08},
    {400.0, 2.8091e-10, 86.0, 7.82},
};

// Strategy comparison at vdd = 1 V, 200 MHz.
struct StrategyRow {
  const char* name;
  double avg_power_w;
  double delay_s;
  double max_vst_mv;       // worst tapping point / VGND1
  double improvement_pct;  // printed improvement vs the best-case delay (%)
};

inline constexpr StrategyRow kStrategyComparison[] = {
    {"dstn", 1.3556e-5, 2.5871e-10, 114.0, 0.9},
    {"tunable_1000", 1.3638e-5, 2.5455e-10, 74.0, 2.29},
};

inline constexpr double kRefUngatedDelay = 2.3836e-10;    // s
inline constexpr double kRefBestCaseDelay = 2.6052e-10;   // s, conventional W=700
inline constexpr double kRefBudgetLimit = 2.8657e-10;     // s, printed 1.10 * d_BC
inline constexpr double kRefUngatedAvgPower = 1.3862e-5;  // W
inline constexpr double kRefTunableAvgPower = 1.3638e-5;  // W, word 1000
inline constexpr double kRefPowerReductionPct = 1.61;     // printed
inline constexpr double kRefDelayIncreasePct = 6.79;      // printed

// Sweep endpoints across configuration words 0001 -> 1111.
inline constexpr double kRefSweepPowerLo = 1.34026e-5;  // W at 0001
inline constexpr double kRefSweepPowerHi = 1.37476e-5;  // W at 1111
inline constexpr double kRefSweepDelayHi = 2.8174e-10;  // s at 0001
inline constexpr double kRefSweepDelayLo = 2.5054e-10;  // s at 1111

static_assert(sizeof(kConventionalSizing) / sizeof(ConventionalRow) == 5);
static_assert(sizeof(kCbstdSizing) / sizeof(CbstdRow) == 4);
static_assert(kConventionalSizing[4].w_nm == 700.0 &&
              kConventionalSizing[4].vst_mv == 89.0 &&
              kConventionalSizing[4].delay_s == kRefBestCaseDelay);
static_assert(kConventionalSizing[3].vst_mv == 108.0);
static_assert(kCbstdSizing[3].w_nm == 400.0 && kCbstdSizing[3].delay_s == 2.8091e-10);
static_assert(kCbstdSizing[2].delay_s == 2.8680e-10);
static_assert(kStrategyComparison[0].max_vst_mv == 114.0);
static_assert(kStrategyComparison[1].delay_s == 2.5455e-10 &&
              kStrategyComparison[1].improvement_pct == 2.29);
static_assert(kRefUngatedDelay == 2.3836e-10 && kRefBestCaseDelay == 2.6052e-10);
static_assert(kRefUngatedAvgPower == 1.3862e-5 && kRefTunableAvgPower == 1.3638e-5);

}  // namespace pglab
