#include "foliacoh/module.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace foliacoh {

void GradedModulePresentation::validate() const {
  if (window < 0) throw std::invalid_argument("module window must be >= 0");
  for (std::size_t k = 0; k < relations.size(); ++k) {
    if (relations[k].size() != generator_degrees.size())
      throw std::invalid_argument("relation " + std::to_string(k) + " has " + std::to_string(relations[k].size()) +
                                  " entries for " + std::to_string(generator_degrees.size()) + " generators");
    for (const auto& p : relations[k])
      if (p.vars() != dim_a && !p.is_zero())
        throw std::invalid_argument("relation " + std::to_string(k) + " uses the wrong number of variables");
    (void)relation_degree(k);
  }
  for (int d : generator_degrees)
    if (d < 0) throw std::invalid_argument("generator degrees must be >= 0");
}

int GradedModulePresentation::relation_degree(std::size_t k) const {
  std::optional<int> degree;
  for (std::size_t j = 0; j < relations[k].size(); ++j) {
    const auto& p = relations[k][j];
    if (p.is_zero()) continue;
    const auto hd = p.homogeneous_degree();
    if (!hd) throw std::invalid_argument("relation " + std::to_string(k) + " is not homogeneous");
    const int d = generator_degrees[j] + 2 * *hd;
    if (degree && *degree != d) throw std::invalid_argument("relation " + std::to_string(k) + " is not homogeneous");
    degree = d;
  }
  if (!degree) throw std::invalid_argument("relation " + std::to_string(k) + " is zero");
  return *degree;
}

GradedModulePresentation GradedModulePresentation::free(std::size_t dim_a, std::vector<int> degrees, int window) {
  GradedModulePresentation p;
  p.dim_a = dim_a;
  p.generator_degrees = std::move(degrees);
  p.window = window;
  return p;
}

namespace {

Exponent add(const Exponent& a, const Exponent& b) {
  Exponent e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
  return e;
}

struct SliceIndex {
  std::map<std::pair<std::size_t, Exponent>, std::size_t> index;
};

}  // namespace

GradedModule::GradedModule(GradedModulePresentation presentation) : pres_(std::move(presentation)) {
  pres_.validate();
  const int window = pres_.window;
  const std::size_t r = pres_.dim_a;
  slices_.resize(static_cast<std::size_t>(window) + 1);
  std::vector<int> rel_degrees(pres_.relations.size());
  for (std::size_t k = 0; k < rel_degrees.size(); ++k) rel_degrees[k] = pres_.relation_degree(k);

#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= window; ++n) {
    Slice& s = slices_[static_cast<std::size_t>(n)];
    for (std::size_t j = 0; j < pres_.generator_degrees.size(); ++j) {
      const int rest = n - pres_.generator_degrees[j];
      if (rest < 0 || rest % 2 != 0) continue;
      for (auto& e : monomials_of_degree(r, rest / 2)) s.basis.push_back({j, std::move(e)});
    }
    std::map<std::pair<std::size_t, Exponent>, std::size_t> index;
    for (std::size_t i = 0; i < s.basis.size(); ++i) index[{s.basis[i].generator, s.basis[i].exponent}] = i;
    s.relations = EchelonBasis(s.basis.size());
    for (std::size_t k = 0; k < pres_.relations.size(); ++k) {
      const int rest = n - rel_degrees[k];
      if (rest < 0 || rest % 2 != 0) continue;
      for (const auto& m : monomials_of_degree(r, rest / 2)) {
        Vector v(s.basis.size());
        for (std::size_t j = 0; j < pres_.relations[k].size(); ++j) {
          for (const auto& [e, c] : pres_.relations[k][j].terms()) v[index.at({j, add(e, m)})] += c;
        }
        s.relations.insert(std::move(v));
      }
    }
    std::vector<bool> pivot(s.basis.size(), false);
    for (auto p : s.relations.pivots()) pivot[p] = true;
    s.position.assign(s.basis.size(), -1);
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
      if (pivot[i]) continue;
      s.position[i] = static_cast<long>(s.quotient_coords.size());
      s.quotient_coords.push_back(i);
    }
  }
}

const GradedModule::Slice& GradedModule::slice(int n) const {
  if (n < 0 || n > window()) throw std::out_of_range("module degree " + std::to_string(n) + " outside window");
  return slices_[static_cast<std::size_t>(n)];
}

std::size_t GradedModule::dim(int n) const {
  if (n < 0 || n > window()) return 0;
  return slice(n).quotient_coords.size();
}

const std::vector<GradedModule::FreeBasisElement>& GradedModule::free_basis(int n) const { return slice(n).basis; }

std::size_t GradedModule::index_of(int n, std::size_t generator, const Exponent& e) const {
  const auto& basis = slice(n).basis;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].generator == generator && basis[i].exponent == e) return i;
  throw std::invalid_argument("term is not of degree " + std::to_string(n));
}

Vector GradedModule::free_coordinates(int n, const FreeElement& element) const {
  if (element.size() != pres_.generator_degrees.size())
    throw std::invalid_argument("free element has the wrong number of components");
  Vector v(slice(n).basis.size());
  for (std::size_t j = 0; j < element.size(); ++j)
    for (const auto& [e, c] : element[j].terms()) v[index_of(n, j, e)] += c;
  return v;
}

Vector GradedModule::quotient_coordinates(int n, const Vector& free_vector) const {
  const Slice& s = slice(n);
  const Vector rem = s.relations.reduce(free_vector);
  Vector out(s.quotient_coords.size());
  for (std::size_t q = 0; q < s.quotient_coords.size(); ++q) out[q] = rem[s.quotient_coords[q]];
  return out;
}

Vector GradedModule::lift(int n, std::size_t j) const {
  const Slice& s = slice(n);
  return unit_vector(s.basis.size(), s.quotient_coords.at(j));
}

bool GradedModule::is_relation(int n, const Vector& free_vector) const {
  return slice(n).relations.contains(free_vector);
}

Matrix GradedModule::multiplication(int n, std::size_t var) const {
  if (var >= vars()) throw std::out_of_range("variable index");
  const Slice& s = slice(n);
  Matrix out(dim(n + 2), dim(n));
  if (n + 2 > window()) throw std::out_of_range("multiplication leaves the window");
  for (std::size_t q = 0; q < s.quotient_coords.size(); ++q) {
    const auto& b = s.basis[s.quotient_coords[q]];
    Exponent e = b.exponent;
    e[var] += 1;
    const Vector image = quotient_coordinates(n + 2, unit_vector(slice(n + 2).basis.size(), index_of(n + 2, b.generator, e)));
    for (std::size_t i = 0; i < image.size(); ++i) out(i, q) = image[i];
  }
  return out;
}

HilbertSeriesWindow hilbert(const GradedModulePresentation& m) { return hilbert(GradedModule(m)); }

HilbertSeriesWindow hilbert(const GradedModule& m) {
  HilbertSeriesWindow h;
  const int window = m.window();
  const int r = static_cast<int>(m.vars());
  for (int n = 0; n <= window; ++n) h.coeffs.push_back(static_cast<std::int64_t>(m.dim(n)));
  const auto factor = SignedPolynomial::one_minus_t2(r);
  h.multiplied.assign(h.coeffs.size(), 0);
  for (int n = 0; n <= window; ++n)
    for (int k = 0; k <= std::min(n, factor.degree()); ++k)
      h.multiplied[static_cast<std::size_t>(n)] += factor.coeff(k) * h.coeffs[static_cast<std::size_t>(n - k)];
  int last = -1;
  for (int n = 0; n <= window; ++n)
    if (h.multiplied[static_cast<std::size_t>(n)] != 0) last = n;
  const int trailing = window - last;
  if (trailing >= r + 2) {
    std::vector<std::int64_t> num(h.multiplied.begin(), h.multiplied.begin() + (last + 1));
    h.closed_form = PoincareSeries(SignedPolynomial(std::move(num)), r);
    h.certificate = "h(t)(1-t^2)^" + std::to_string(r) + " vanishes on degrees " + std::to_string(last + 1) + ".." +
                    std::to_string(window);
  } else {
    h.certificate = "only " + std::to_string(trailing) + " trailing zero coefficients after multiplying by (1-t^2)^" +
                    std::to_string(r) + "; need " + std::to_string(r + 2);
  }
  return h;
}

std::size_t TorTable::total(std::size_t i) const {
  std::size_t s = 0;
  for (auto x : dims.at(i)) s += x;
  return s;
}

std::optional<std::size_t> TorTable::top_nonzero() const {
  std::optional<std::size_t> top;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (total(i) > 0) top = i;
  return top;
}

namespace {

std::vector<std::vector<unsigned>> subsets_by_size(std::size_t r) {
  std::vector<std::vector<unsigned>> out(r + 1);
  for (unsigned mask = 0; mask < (1u << r); ++mask) out[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
  return out;
}

/// Koszul boundary K_i(n) -> K_{i-1}(n).
Matrix koszul_boundary(const GradedModule& m, const std::vector<std::vector<unsigned>>& subsets, std::size_t i, int n) {
  const int src_deg = n - 2 * static_cast<int>(i);
  const int dst_deg = src_deg + 2;
  const std::size_t src_dim = m.dim(src_deg);
  const std::size_t dst_dim = m.dim(dst_deg);
  const auto& src_sets = subsets[i];
  const auto& dst_sets = subsets[i - 1];
  Matrix d(dst_sets.size() * dst_dim, src_sets.size() * src_dim);
  if (src_dim == 0 || dst_dim == 0) return d;
  std::vector<Matrix> mult(m.vars());
  for (std::size_t v = 0; v < m.vars(); ++v) mult[v] = m.multiplication(src_deg, v);
  for (std::size_t s = 0; s < src_sets.size(); ++s) {
    const unsigned mask = src_sets[s];
    int position = 0;
    for (std::size_t v = 0; v < m.vars(); ++v) {
      if (!(mask & (1u << v))) continue;
      ++position;
      const int sign = (position % 2 == 1) ? 1 : -1;
      const unsigned rest = mask & ~(1u << v);
      const auto t = static_cast<std::size_t>(std::find(dst_sets.begin(), dst_sets.end(), rest) - dst_sets.begin());
      for (std::size_t col = 0; col < src_dim; ++col)
        for (std::size_t row = 0; row < dst_dim; ++row)
          if (sgn(mult[v](row, col)) != 0) d(t * dst_dim + row, s * src_dim + col) += sign * mult[v](row, col);
    }
  }
  return d;
}

}  // namespace

TorTable koszul_tor(const GradedModulePresentation& m) { return koszul_tor(GradedModule(m)); }

TorTable koszul_tor(const GradedModule& m) {
  const std::size_t r = m.vars();
  const int window = m.window();
  const auto subsets = subsets_by_size(r);
  TorTable tor;
  tor.window = window;
  tor.dims.assign(r + 1, std::vector<std::size_t>(static_cast<std::size_t>(window) + 1, 0));

#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= window; ++n) {
    std::vector<std::size_t> chain_dim(r + 1), boundary_rank(r + 2, 0);
    for (std::size_t i = 0; i <= r; ++i) chain_dim[i] = subsets[i].size() * m.dim(n - 2 * static_cast<int>(i));
    for (std::size_t i = 1; i <= r; ++i) boundary_rank[i] = rank(koszul_boundary(m, subsets, i, n));
    for (std::size_t i = 0; i <= r; ++i)
      tor.dims[i][static_cast<std::size_t>(n)] = chain_dim[i] - boundary_rank[i] - boundary_rank[i + 1];
  }
  return tor;
}

std::vector<std::int64_t> koszul_euler(const GradedModule& m) {
  const std::size_t r = m.vars();
  const auto subsets = subsets_by_size(r);
  std::vector<std::int64_t> out;
  for (int n = 0; n <= m.window(); ++n) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i <= r; ++i) {
      const auto d = static_cast<std::int64_t>(subsets[i].size() * m.dim(n - 2 * static_cast<int>(i)));
      s += (i % 2 == 0) ? d : -d;
    }
    out.push_back(s);
  }
  return out;
}

int required_window(const GradedModulePresentation& m) {
  int top = 0;
  for (int d : m.generator_degrees) top = std::max(top, d);
  for (std::size_t k = 0; k < m.relations.size(); ++k) top = std::max(top, m.relation_degree(k));
  return top + 2 * static_cast<int>(m.dim_a);
}

int default_window(const GradedModulePresentation& m) { return required_window(m) + static_cast<int>(m.dim_a) + 2; }

FreenessVerdict freeness_test(const GradedModule& m) {
  const TorTable tor = koszul_tor(m);
  FreenessVerdict v;
  v.window_sufficient = m.window() >= required_window(m.presentation());
  v.free = m.vars() == 0 || tor.total(1) == 0;
  for (int n = 0; n <= m.window(); ++n)
    for (std::size_t k = 0; k < tor.dims[0][static_cast<std::size_t>(n)]; ++k) v.ranks.push_back(n);
  v.note = v.free ? "Tor_1 vanishes on the window" : "Tor_1 is nonzero";
  if (!v.window_sufficient)
    v.note += "; verdict scoped to degrees <= " + std::to_string(m.window()) + " (window below " +
              std::to_string(required_window(m.presentation())) + ")";
  return v;
}

LocalizedRank localized_rank(const GradedModule& m) {
  const auto h = hilbert(m);
  LocalizedRank out;
  if (!h.closed_form) {
    out.note = "inconclusive: " + h.certificate;
    return out;
  }
  out.rank = SignedPolynomial(h.multiplied).evaluate(1);
  out.note = "rank read off at t = 1; " + h.certificate;
  return out;
}

namespace {

/// Multiplicity of t = 1 as a root.
int order_at_one(SignedPolynomial p) {
  int order = 0;
  while (!p.is_zero() && p.evaluate(1) == 0) {
    // synthetic division by (t - 1)
    const auto& c = p.coeffs();
    std::vector<std::int64_t> q(c.size() - 1, 0);
    std::int64_t carry = 0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
      carry = c[k] + carry;
      q[k - 1] = carry;
    }
    p = SignedPolynomial(std::move(q));
    ++order;
  }
  return order;
}

}  // namespace

DepthDimension depth_dim_cm(const GradedModule& m) {
  DepthDimension out;
  const auto h = hilbert(m);
  const auto tor = koszul_tor(m);
  const bool window_ok = m.window() >= required_window(m.presentation());
  const auto r = static_cast<std::int64_t>(m.vars());
  const SignedPolynomial numerator(h.multiplied);
  if (numerator.is_zero() && h.closed_form) {
    out.depth = std::nullopt;
    out.krull_dim = -1;
    out.cohen_macaulay = true;
    out.conclusive = window_ok;
    out.note = "zero module: depth +inf, dimension -inf";
    return out;
  }
  out.krull_dim = r - order_at_one(numerator);
  const auto top = tor.top_nonzero();
  out.depth = r - static_cast<std::int64_t>(top.value_or(0));
  out.cohen_macaulay = out.depth == out.krull_dim;
  out.conclusive = h.closed_form.has_value() && window_ok;
  out.note = out.conclusive ? "certified on window " + std::to_string(m.window())
                            : "inconclusive: " + (h.closed_form ? std::string("window below ") +
                                                                       std::to_string(required_window(m.presentation()))
                                                                 : h.certificate);
  return out;
}

Matrix induced_matrix(const GradedModule& source, const GradedModule& target, const ModuleMap& map, int n) {
  const auto& pres = source.presentation();
  if (map.images.size() != pres.generator_degrees.size())
    throw std::invalid_argument("module map must give one image per source generator");
  Matrix out(target.dim(n), source.dim(n));
  const auto& basis = source.free_basis(n);
  for (std::size_t q = 0; q < source.dim(n); ++q) {
    const Vector free = source.lift(n, q);
    std::size_t at = 0;
    while (sgn(free[at]) == 0) ++at;
    const auto& b = basis[at];
    FreeElement image;
    const auto u = MultiPolynomial::term(b.exponent, 1);
    for (const auto& p : map.images[b.generator]) image.push_back(u * (p.is_zero() ? MultiPolynomial(u.vars()) : p));
    const Vector coords = target.quotient_coordinates(n, target.free_coordinates(n, image));
    for (std::size_t i = 0; i < coords.size(); ++i) out(i, q) = coords[i];
  }
  return out;
}

SesCmReport ses_cm_check(const GradedModulePresentation& sub, const GradedModulePresentation& middle,
                         const GradedModulePresentation& quotient, const ModuleMap& inclusion,
                         const ModuleMap& projection) {
  SesCmReport report;
  const GradedModule a(sub), b(middle), c(quotient);
  const int window = std::min({a.window(), b.window(), c.window()});

  auto not_ses = [&](std::string msg) {
    report.status = SesCmStatus::not_short_exact;
    report.message = std::move(msg);
    return report;
  };

  // well-definedness: relations map into relations
  auto respects = [&](const GradedModulePresentation& src, const GradedModule& tgt, const ModuleMap& f) {
    for (std::size_t k = 0; k < src.relations.size(); ++k) {
      const int deg = src.relation_degree(k);
      if (deg > window) continue;
      FreeElement image(tgt.presentation().generator_degrees.size(), MultiPolynomial(tgt.vars()));
      for (std::size_t j = 0; j < src.relations[k].size(); ++j) {
        const auto& coeff = src.relations[k][j];
        if (coeff.is_zero()) continue;
        for (std::size_t t = 0; t < image.size(); ++t) {
          const auto& target_part = f.images.at(j).at(t);
          if (!target_part.is_zero()) image[t] = image[t] + coeff * target_part;
        }
      }
      if (!tgt.is_relation(deg, tgt.free_coordinates(deg, image))) return false;
    }
    return true;
  };
  try {
    if (!respects(sub, b, inclusion)) return not_ses("inclusion does not respect relations");
    if (!respects(middle, c, projection)) return not_ses("projection does not respect relations");
    for (int n = 0; n <= window; ++n) {
      const Matrix f = induced_matrix(a, b, inclusion, n);
      const Matrix g = induced_matrix(b, c, projection, n);
      const std::string at = " in degree " + std::to_string(n);
      if (rank(f) != a.dim(n)) return not_ses("inclusion is not injective" + at);
      if (rank(g) != c.dim(n)) return not_ses("projection is not surjective" + at);
      if (!(g * f).is_zero()) return not_ses("projection after inclusion is nonzero" + at);
      if (b.dim(n) != a.dim(n) + c.dim(n)) return not_ses("sequence is not exact in the middle" + at);
    }
  } catch (const std::invalid_argument& e) {
    return not_ses(e.what());
  }

  report.sub = depth_dim_cm(a);
  report.middle = depth_dim_cm(b);
  report.quotient = depth_dim_cm(c);
  const bool hypotheses = report.sub.conclusive && report.quotient.conclusive && report.sub.cohen_macaulay &&
                          report.quotient.cohen_macaulay && report.sub.krull_dim == report.quotient.krull_dim;
  if (!hypotheses) {
    report.status = SesCmStatus::hypotheses_not_met;
    report.message = "outer modules are not both Cohen-Macaulay of the same dimension (dims " +
                     std::to_string(report.sub.krull_dim) + ", " + std::to_string(report.quotient.krull_dim) + ")";
    return report;
  }
  if (report.middle.cohen_macaulay && report.middle.krull_dim == report.sub.krull_dim) {
    report.status = SesCmStatus::verified;
    report.message = "middle module is Cohen-Macaulay of dimension " + std::to_string(report.middle.krull_dim);
  } else {
    report.status = SesCmStatus::lemma_violated;
    report.message = "middle module fails to be Cohen-Macaulay of the outer dimension";
  }
  return report;
}

}  // namespace foliacoh
