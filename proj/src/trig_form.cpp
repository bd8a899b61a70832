#include "torcx/trig_form.hpp"

namespace torcx {

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string Frequency::to_string() const {
  return "eta=" + torcx::to_string(eta) + " xi=" + torcx::to_string(xi);
}

}  // namespace torcx
