#include <cmath>
#include <unordered_map>

#include "wxfleet/econometrics/frame.hpp"
#include "wxfleet/error.hpp"

namespace wxfleet::econometrics {

const std::vector<double>& Frame::at(std::string_view name) const {
  const auto it = cols_.find(name);
  if (it == cols_.end()) throw SchemaError("frame has no column '" + std::string(name) + "'");
  return it->second;
}

void Frame::set(const std::string& name, std::vector<double> values) {
  if (cols_.empty() && rows_ == 0) rows_ = values.size();
  if (values.size() != rows_)
    throw ValidationError(name, "column length " + std::to_string(values.size()) + " != frame rows " +
                                    std::to_string(rows_));
  cols_[name] = std::move(values);
}

std::vector<std::string> Frame::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : cols_) out.push_back(k);
  return out;
}

Frame Frame::filter(const std::function<bool(std::size_t)>& keep) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < rows_; ++i)
    if (keep(i)) rows.push_back(i);
  Frame out(rows.size());
  for (const auto& [name, col] : cols_) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (auto i : rows) v.push_back(col[i]);
    out.cols_[name] = std::move(v);
  }
  return out;
}

Frame make_frame(const PanelDataset& panel) {
  Frame f(panel.records.size());
  for (const auto& name : panel_columns()) f.set(name, panel.column(name));
  return f;
}

std::vector<int> as_ids(const std::vector<double>& values) {
  std::vector<int> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v) || v != std::floor(v)) throw ValidationError("ids", "group ids must be integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace wxfleet::econometrics
