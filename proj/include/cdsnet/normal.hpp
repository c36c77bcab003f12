#pragma once

namespace cdsnet {

double normal_cdf(double x) noexcept;
double normal_pdf(double x) noexcept;
// Inverse of normal_cdf on (0,1).
double normal_quantile(double p);

}  // namespace cdsnet
