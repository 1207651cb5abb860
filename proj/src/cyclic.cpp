#include "tropcert/cyclic.hpp"

#include "tropcert/error.hpp"

namespace tropcert {

LaurentSystem cyclic_system(int n) {
  if (n < 2) throw Error("cyclic system needs at least two variables");
  LaurentSystem sys;
  sys.nvars = n;
  for (int i = 0; i < n; ++i) sys.names.push_back(default_var_name(i));
  for (int k = 1; k < n; ++k) {
    LaurentPoly f(n);
    for (int i = 0; i < n; ++i) {
      IntVector e(n, Int(0));
      for (int j = 0; j < k; ++j) e[(i + j) % n] += 1;
      f.add_term(e, Coeff::integer(1));
    }
    sys.polys.push_back(std::move(f));
  }
  LaurentPoly last(n);
  last.add_term(IntVector(n, Int(1)), Coeff::integer(1));
  last.add_term(IntVector(n, Int(0)), Coeff::integer(-1));
  sys.polys.push_back(std::move(last));
  return sys;
}

std::vector<std::vector<int>> cyclic_generators(int n) {
  std::vector<int> rot(n), inv(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    inv[i] = (i + n - 1) % n;
  }
  return {rot, inv};
}

} // namespace tropcert
