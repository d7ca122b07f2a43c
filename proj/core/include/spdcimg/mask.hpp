#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace spdcimg {

/// Amplitude transmission t(x) in [0, 1] of a transverse object.
class Mask {
 public:
  Mask(std::function<double(double)> transmission, std::string description, double min_feature);

  double operator()(double x) const { return transmission_(x); }
  const std::string& description() const noexcept { return description_; }
  /// Narrowest transparent feature in meters, or 0 if unknown.
  double min_feature() const noexcept { return min_feature_; }

  static Mask unit();
  /// Two slits of width `width` whose centres are `separation` apart, symmetric about x = 0.
  static Mask double_slit(double separation, double width);
  static Mask single_slit(double center, double width);
  /// Piecewise-linear table, zero outside the tabulated range. Throws if any
  /// amplitude lies outside [0, 1] or positions are not strictly increasing.
  static Mask tabulated(std::vector<double> x, std::vector<double> t, std::string description = "table");
  /// Two-column text file: x in mm, amplitude transmission. '#' starts a comment.
  static Mask from_file(const std::filesystem::path& path);

 private:
  std::function<double(double)> transmission_;
  std::string description_;
  double min_feature_;
};

}  // namespace spdcimg
