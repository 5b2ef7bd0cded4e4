#pragma once

// Reference constants frozen from an independent computation (mpmath at 45
// digits).  Multi-index entries come from classical exact reductions to
// depth-one values, not from the evaluator under test.
namespace frozen {

inline constexpr const char* zeta2 = "1.644934066848226436472415166646025189219";
inline constexpr const char* zeta3 = "1.202056903159594285399738161511449990765";
inline constexpr const char* zeta4 = "1.082323233711138191516003696541167902775";
inline constexpr const char* zeta5 = "1.036927755143369926331365486457034168057";
inline constexpr const char* log2 = "0.6931471805599453094172321214581765680755";
inline constexpr const char* zbar1 = "-0.6931471805599453094172321214581765680755";
inline constexpr const char* zbar2 = "-0.8224670334241132182362075833230125946095";
inline constexpr const char* zbar3 = "-0.9015426773696957140498036211335874930737";
// z(1,3) = pi^4/360, z(2,2) = 3 z(4)/4, zstar(2,2) = 7 z(4)/4 (Euler-era reductions)
inline constexpr const char* zeta13 = "0.2705808084277845478790009241352919756937";
inline constexpr const char* zeta22 = "0.8117424252833536436370027724058759270811";
inline constexpr const char* zstar22 = "1.894065658994491835153006468947043829856";
inline constexpr const char* zeta2_sq = "2.705808084277845478790009241352919756937";
// z(-1,-1) = (log^2 2 - zeta(2))/2, from the depth-1 stuffle square
inline constexpr const char* zbar1bar1 = "-0.5822405264650125059026563201596801087442";

}  // namespace frozen
