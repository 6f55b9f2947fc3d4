#pragma once
// Generated by tests/oracles/generate.py (mpmath, 40 digits). Do not edit.
#include <complex>
namespace oracle {
struct Lag { double sep, dt; int j; std::complex<double> lead, trail; };
inline const Lag kLagWeights[] = {
    {0.5, 0.01, 0, {-0.000054978361168096065215, 0.00057280777841896349301}, {0.0037380025205374723357, 0.0016139599185796566825}},
    {0.5, 0.01, 1, {-0.004838770275985087694, -0.0073011352502751897255}, {-0.0089918113238217398999, 0.00081860609306523771828}},
    {0.5, 0.01, 5, {0.0056461543898853633902, 0.0023197718424062129066}, {0.0056208411152207511204, 0.0018657684793314968174}},
    {0.5, 0.01, 40, {0.0017940221831770543669, -0.0013092342401444646128}, {0.001784996559369720383, -0.0013061258150780074286}},
    {3.0, 0.02, 0, {-0.00000045080890214356271743, 0.0000031162839628333945713}, {0.00034959395673789867727, 0.000058519946875969939119}},
    {3.0, 0.02, 2, {-0.00094824228552094154586, -0.00034654022344821642523}, {0.0016216885153504062322, 0.00085729309782987596747}},
    {3.0, 0.02, 30, {-0.0035347767527013406158, 0.00078251825825623749839}, {-0.003481311253882268685, 0.00091935208500210562827}},
    {32.0, 0.001, 0, {0.00000000000013174987583580504353, 0.000000000000034205907821102458533}, {0.000000008757041777559847567, -0.000000033727882701769791799}},
    {32.0, 0.001, 10, {0.0000011000607009811171572, -0.000000057661399080077133973}, {0.0000010536784131296360327, 0.00000071082828213854556638}},
    {32.0, 0.001, 300, {-0.00019787347529718203387, -0.000052858924024689665115}, {-0.00015040446941393744012, 0.00013902886593434405544}},
};
struct Moment { double sep, t; std::complex<double> value; };
inline const Moment kSqrtMoments[] = {
    {0.0, 0.3, {0.093998560298662515362, -0.093998560298662515362}},
    {0.1, 0.01, {0.0019829377252023173251, 0.00031047574608882838907}},
    {0.3, 0.5, {0.14415542735388002338, -0.064690874862743436257}},
    {2.0, 0.5, {-0.023710095795688558726, 0.011006159694415658058}},
    {2.0, 0.05, {-0.00011599972922123796421, 0.000073889772415366038385}},
    {10.0, 0.25, {0.000033226370569903182739, 0.000052886675897109284107}},
};
struct Kernel { double t, x; std::complex<double> value; };
inline const Kernel kKernel[] = {
    {1.0, 0.0, {0.19947114020071633897, -0.19947114020071633897}},
    {0.25, 1.5, {0.059801277948661452012, 0.56101131302273897113}},
    {0.01, 0.3, {0.29900638974330785546, 2.8050565651136947626}},
    {3.0, -7.0, {-0.160881071344375295, -0.025359509690355784558}},
};
struct Erfcx { std::complex<double> z, value; };
inline const Erfcx kErfcx[] = {
    {{0.2999999999999999889, -0.2999999999999999889}, {0.68872012089012618565, 0.19703685972446095425}},
    {{1.1999999999999999556, -1.1999999999999999556}, {0.25398549673253101913, 0.18987848176331742137}},
    {{2.0, -2.0}, {0.14795275951201582423, 0.13117971708421785359}},
    {{5.0, -5.0}, {0.056965439888176978967, 0.055838742775391028233}},
    {{20.0, -20.0}, {0.014113538470519280935, 0.014095907649337069551}},
    {{1.0, 0.5}, {0.39123402145213608337, -0.12720241088464801019}},
};
}  // namespace oracle
