#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wxfleet/panel.hpp"

namespace wxfleet::econometrics {

/// Named numeric columns of equal length; the working substrate of every
/// estimator.
class Frame {
 public:
  Frame() = default;
  explicit Frame(std::size_t rows) : rows_(rows) {}

  std::size_t rows() const noexcept { return rows_; }
  bool has(std::string_view name) const { return cols_.find(std::string(name)) != cols_.end(); }
  /// Throws SchemaError naming the column when absent.
  const std::vector<double>& at(std::string_view name) const;
  /// Adds or replaces a column; throws ValidationError on length mismatch.
  void set(const std::string& name, std::vector<double> values);
  std::vector<std::string> names() const;

  /// Rows where `keep` is true, all columns.
  Frame filter(const std::function<bool(std::size_t)>& keep) const;

 private:
  std::size_t rows_ = 0;
  std::map<std::string, std::vector<double>, std::less<>> cols_;
};

/// Every panel column under its CSV name.
Frame make_frame(const PanelDataset& panel);

/// Integer ids of a column (for fixed effects and clusters).
std::vector<int> as_ids(const std::vector<double>& values);

}  // namespace wxfleet::econometrics
