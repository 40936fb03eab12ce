#include "foliacoh/spectral.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "foliacoh/series.hpp"

namespace foliacoh {

std::size_t DoubleComplexPage::at(int p, int q) const {
  const int n = p + q;
  if (p < 0 || q < 0 || n > window || 2 * p > n) return 0;
  return dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)];
}

std::size_t DoubleComplexPage::total(int n) const {
  if (n < 0 || n > window) return 0;
  std::size_t t = 0;
  for (auto d : dims[static_cast<std::size_t>(n)]) t += d;
  return t;
}

bool DoubleComplexPage::differentials_vanish() const {
  for (const auto& row : rank_out)
    for (auto r : row)
      if (r != 0) return false;
  return true;
}

std::string to_string(FormalityMethod m) {
  switch (m) {
    case FormalityMethod::e1_collapse: return "E1-collapse";
    case FormalityMethod::odd_vanishing: return "odd-vanishing";
    case FormalityMethod::hilbert_factorization: return "hilbert-factorization";
    case FormalityMethod::surjectivity: return "surjectivity";
    case FormalityMethod::free_module: return "free-module";
  }
  return "unknown";
}

namespace {

/// Filtration subspaces Z_r^p(n) = {x in F^p C^n : D x in F^{p+r} C^{n+1}} of the
/// Cartan complex, in invariant coordinates.
class FilteredComplex {
 public:
  explicit FilteredComplex(const CartanComplex& c) : c_(c) {
    for (int n = 0; n <= c.complex.top(); ++n) d_.push_back(c.complex.differential(n));
  }

  std::size_t dim(int n) const { return c_.complex.dim(n); }

  std::size_t start(int n, int p) const {
    if (p <= 0) return 0;
    if (2 * p > n) return dim(n);
    return c_.slices[static_cast<std::size_t>(n)].cells[static_cast<std::size_t>(p)].invariant_offset;
  }

  const std::vector<Vector>& z(int r, int p, int n) {
    const auto key = std::make_tuple(r, p, n);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<Vector> out;
    if (n >= 0 && 2 * p <= n) {
      const std::size_t lo = start(n, p), cols = dim(n) - lo;  // F^p = C for p <= 0
      if (r <= 0) {
        for (std::size_t k = 0; k < cols; ++k) out.push_back(unit_vector(dim(n), lo + k));
      } else {
        const std::size_t rows = start(n + 1, p + r);
        Matrix m(rows, cols);
        const Matrix& d = d_[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(i, lo + j);
        for (const auto& v : null_space(m)) {
          Vector full(dim(n));
          std::copy(v.begin(), v.end(), full.begin() + static_cast<std::ptrdiff_t>(lo));
          out.push_back(std::move(full));
        }
      }
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  std::vector<Vector> boundary(int r, int p, int n) {
    std::vector<Vector> out;
    if (n <= 0) return out;
    for (const auto& v : z(r - 1, p - r + 1, n - 1)) out.push_back(d_[static_cast<std::size_t>(n) - 1] * v);
    return out;
  }

  std::size_t span_dim(std::size_t ambient, std::initializer_list<const std::vector<Vector>*> lists) const {
    EchelonBasis basis(ambient);
    for (const auto* list : lists)
      for (const auto& v : *list) basis.insert(v);
    return basis.rank();
  }

  DoubleComplexPage page(int r, int window, int stable) {
    DoubleComplexPage pg;
    pg.r = r;
    pg.window = window;
    pg.stable_through = stable;
    for (int n = 0; n <= window; ++n) {
      std::vector<std::size_t> dims, ranks;
      for (int p = 0; 2 * p <= n; ++p) {
        const auto& zr = z(r, p, n);
        const auto b = boundary(r, p, n);
        dims.push_back(zr.size() - span_dim(dim(n), {&z(r - 1, p + 1, n), &b}));
        ranks.push_back(zr.size() - span_dim(dim(n), {&z(r + 1, p, n), &z(r - 1, p + 1, n)}));
      }
      pg.dims.push_back(std::move(dims));
      pg.rank_out.push_back(std::move(ranks));
    }
    return pg;
  }

  Matrix vertical(int n, int p) const {
    const auto& cells_n = c_.slices[static_cast<std::size_t>(n)].cells;
    const auto& cells_m = c_.slices[static_cast<std::size_t>(n) + 1].cells;
    const auto& src = cells_n[static_cast<std::size_t>(p)];
    const auto& dst = cells_m[static_cast<std::size_t>(p)];
    Matrix m(dst.invariants.size(), src.invariants.size());
    const Matrix& d = d_[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = d(dst.invariant_offset + i, src.invariant_offset + j);
    return m;
  }

 private:
  const CartanComplex& c_;
  std::vector<Matrix> d_;
  std::map<std::tuple<int, int, int>, std::vector<Vector>> cache_;
};

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

void require_killing_case(const GStarStructure& s) {
  if (!s.lie.is_abelian()) throw HypothesisError("the E_1 description needs an abelian Lie algebra");
  if (!s.lie_derivatives_vanish())
    throw HypothesisError("the E_1 description needs L_X = 0 on A; refusing to guess its shape");
}

DoubleComplexPage checked_e1(const GStarStructure& s, const CartanComplex& cartan, FilteredComplex& f, int max_degree) {
  DoubleComplexPage e1 = f.page(1, max_degree, cartan.stable_through);
  const auto h_a = cohomology_dims(s.complex());
  const std::size_t r = s.lie.dim;
  for (int n = 0; n <= cartan.stable_through; ++n)
    for (int p = 0; 2 * p <= n; ++p) {
      const std::size_t ker = null_space(f.vertical(n, p)).size();
      const std::size_t im = (2 * p <= n - 1) ? rank(f.vertical(n - 1, p)) : 0;
      const std::size_t column = ker - im;
      const int k = n - 2 * p;
      const std::size_t h = (k <= s.top()) ? h_a[static_cast<std::size_t>(k)] : 0;
      const std::size_t formula = binomial(r + static_cast<std::size_t>(p) - 1, static_cast<std::size_t>(p)) * h;
      const std::size_t filtered = e1.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)];
      if (k <= s.stable_through() && (column != formula || filtered != formula))
        throw std::logic_error("E_1 mismatch at p=" + std::to_string(p) + ", q=" + std::to_string(n - p));
    }
  return e1;
}

}  // namespace

DoubleComplexPage e1_page(const GStarStructure& s, int max_degree) {
  require_killing_case(s);
  const CartanComplex cartan = cartan_complex(s, max_degree);
  FilteredComplex f(cartan);
  return checked_e1(s, cartan, f, max_degree);
}

SpectralRun run_pages(const GStarStructure& s, int max_degree) {
  require_killing_case(s);
  const CartanComplex cartan = cartan_complex(s, max_degree);
  FilteredComplex f(cartan);
  SpectralRun run;
  run.stable_through = cartan.stable_through;
  run.pages.push_back(checked_e1(s, cartan, f, max_degree));
  const int last = (max_degree + 1) / 2 + 1;
  for (int r = 2; r <= last; ++r) {
    run.pages.push_back(f.page(r, max_degree, cartan.stable_through));
    const auto& prev = run.pages[run.pages.size() - 2];
    const auto& cur = run.pages.back();
    for (int n = 0; n <= max_degree; ++n)
      for (int p = 0; 2 * p <= n; ++p) {
        const std::size_t in = (n >= 1 && p - (r - 1) >= 0 && 2 * (p - (r - 1)) <= n - 1)
                                   ? prev.rank_out[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(p - (r - 1))]
                                   : 0;
        const std::size_t expect =
            prev.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] -
            prev.rank_out[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] - in;
        if (cur.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] != expect)
          throw std::logic_error("page " + std::to_string(r) + " is not the homology of page " + std::to_string(r - 1) +
                                 " at p=" + std::to_string(p) + ", n=" + std::to_string(n));
      }
  }
  const auto& final_page = run.pages.back();
  for (int n = 0; n <= max_degree; ++n) run.e_infinity.push_back(final_page.total(n));
  const auto h = cohomology_dims(cartan.complex);
  run.cohomology.assign(h.begin(), h.begin() + max_degree + 1);
  run.converged = run.e_infinity == run.cohomology;
  run.collapse_page = static_cast<int>(run.pages.size());
  for (std::size_t i = 0; i < run.pages.size(); ++i)
    if (run.pages[i].dims == final_page.dims) {
      run.collapse_page = run.pages[i].r;
      break;
    }
  run.conclusive = run.stable_through >= max_degree;
  run.note = run.conclusive ? "pages exact through degree " + std::to_string(max_degree)
                            : "inconclusive through degree " + std::to_string(max_degree) + "; stable through " +
                                  std::to_string(run.stable_through);
  return run;
}

std::vector<std::size_t> restriction_ranks(const GStarStructure& s, const EquivariantCohomology& e) {
  const Cohomology h_a = cohomology(s.complex());
  std::vector<std::size_t> out;
  for (int n = 0; n <= e.window; ++n) {
    if (n > s.top()) {
      out.push_back(0);
      continue;
    }
    const CartanCell& cell = e.cartan.slices[static_cast<std::size_t>(n)].cells[0];
    EchelonBasis image(h_a.dims[static_cast<std::size_t>(n)]);
    for (const auto& rep : e.h.representatives[static_cast<std::size_t>(n)]) {
      const Vector full = e.cartan.to_full(n, rep);
      const Vector form(full.begin() + static_cast<std::ptrdiff_t>(cell.full_offset),
                        full.begin() + static_cast<std::ptrdiff_t>(cell.full_offset + cell.full_size));
      const auto cls = h_a.class_of(n, form);
      if (!cls) throw std::logic_error("restriction of an equivariant cocycle is not closed");
      image.insert(*cls);
    }
    out.push_back(image.rank());
  }
  return out;
}

FormalityVerdict formality_verdict(const EquivariantCohomology& e, const std::vector<std::size_t>& basic_h,
                                   std::size_t dim_a, int max_degree, const SpectralRun* run,
                                   const GStarStructure* algebra) {
  FormalityVerdict v;
  const int window = std::min({max_degree, e.stable_through, static_cast<int>(e.dims.size()) - 1});
  v.stable_through = window;
  auto h_at = [&](int n) -> std::int64_t {
    return n < static_cast<int>(basic_h.size()) ? static_cast<std::int64_t>(basic_h[static_cast<std::size_t>(n)]) : 0;
  };

  MethodResult odd;
  odd.method = FormalityMethod::odd_vanishing;
  bool all_odd_zero = true;
  for (std::size_t n = 1; n < basic_h.size(); n += 2)
    if (basic_h[n] != 0) {
      all_odd_zero = false;
      odd.witness_degree = static_cast<int>(n);
      odd.witness = "H^" + std::to_string(n) + "(A) != 0; criterion does not apply";
      break;
    }
  if (all_odd_zero) {
    odd.conclusive = true;
    odd.formal = true;
    odd.witness = "H^odd(A) = 0";
  }
  v.methods.push_back(odd);

  MethodResult hilb;
  hilb.method = FormalityMethod::hilbert_factorization;
  hilb.conclusive = true;
  hilb.formal = true;
  {
    std::vector<std::int64_t> coeffs;
    for (std::size_t n = 0; n < basic_h.size(); ++n) coeffs.push_back(h_at(static_cast<int>(n)));
    const auto expected = PoincareSeries(SignedPolynomial(coeffs), static_cast<int>(dim_a)).expand(window);
    for (int n = 0; n <= window; ++n)
      if (expected[static_cast<std::size_t>(n)] != static_cast<std::int64_t>(e.dims[static_cast<std::size_t>(n)])) {
        hilb.formal = false;
        hilb.witness_degree = n;
        hilb.witness = "t^" + std::to_string(n) + ": dim H_g = " + std::to_string(e.dims[static_cast<std::size_t>(n)]) +
                       ", P(A)/(1-t^2)^" + std::to_string(dim_a) + " gives " +
                       std::to_string(expected[static_cast<std::size_t>(n)]);
        break;
      }
    if (hilb.formal) hilb.witness = "coefficients agree through degree " + std::to_string(window);
  }
  v.methods.push_back(hilb);

  if (run) {
    MethodResult collapse;
    collapse.method = FormalityMethod::e1_collapse;
    collapse.conclusive = run->conclusive;
    collapse.formal = true;
    for (int n = 0; n <= std::min(window, static_cast<int>(run->e_infinity.size()) - 1); ++n)
      if (run->pages.front().total(n) != run->e_infinity[static_cast<std::size_t>(n)]) {
        collapse.formal = false;
        collapse.witness_degree = n;
        collapse.witness = "E_1 and E_infinity differ in total degree " + std::to_string(n);
        break;
      }
    if (collapse.formal) collapse.witness = "E_1 = E_infinity";
    v.methods.push_back(collapse);
  }

  if (algebra) {
    MethodResult surj;
    surj.method = FormalityMethod::surjectivity;
    surj.conclusive = true;
    surj.formal = true;
    const auto ranks = restriction_ranks(*algebra, e);
    for (int n = 0; n <= window; ++n)
      if (static_cast<std::int64_t>(ranks[static_cast<std::size_t>(n)]) != h_at(n)) {
        surj.formal = false;
        surj.witness_degree = n;
        surj.witness = "H_g -> H(A) has rank " + std::to_string(ranks[static_cast<std::size_t>(n)]) + " in degree " +
                       std::to_string(n);
        break;
      }
    if (surj.formal) surj.witness = "H_g -> H(A) is onto through degree " + std::to_string(window);
    v.methods.push_back(surj);
  }

  MethodResult fm;
  fm.method = FormalityMethod::free_module;
  if (e.u_action.size() == dim_a) {
    const GradedModule module(module_presentation(e));
    const auto free = freeness_test(module);
    fm.conclusive = free.window_sufficient;
    fm.formal = free.free;
    fm.witness = free.note;
  } else {
    fm.witness = "no module structure";
  }
  v.methods.push_back(fm);

  const MethodResult* decided = nullptr;
  for (const auto& m : v.methods) {
    if (!m.conclusive) continue;
    if (!decided) {
      decided = &m;
    } else if (decided->formal != m.formal) {
      v.conflict = true;
      v.witness = to_string(decided->method) + " and " + to_string(m.method) + " disagree";
    }
  }
  if (decided) {
    v.conclusive = !v.conflict;
    v.formal = decided->formal;
    v.method = decided->method;
    v.witness_degree = decided->witness_degree;
    if (!v.conflict) v.witness = decided->witness;
  }
  return v;
}

}  // namespace foliacoh
