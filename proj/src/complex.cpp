#include "foliacoh/complex.hpp"

#include <algorithm>
#include <numeric>

namespace foliacoh {

std::size_t GradedVectorSpace::total() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

Matrix CochainComplex::differential(int n) const {
  if (n < 0 || n > top()) return Matrix(dim(n + 1), dim(n));
  if (n == top()) return Matrix(0, dim(n));
  return differentials[static_cast<std::size_t>(n)];
}

CochainComplex CochainComplex::zero(std::vector<std::size_t> dims) {
  CochainComplex c;
  c.space.dims = std::move(dims);
  for (int n = 0; n <= c.top(); ++n) c.differentials.emplace_back(c.dim(n + 1), c.dim(n));
  c.stable_through = c.top();
  return c;
}

CochainComplex CochainComplex::make(std::vector<std::size_t> dims, std::vector<Matrix> differentials) {
  CochainComplex c;
  c.space.dims = std::move(dims);
  c.differentials = std::move(differentials);
  if (c.differentials.size() + 1 == c.space.dims.size()) c.differentials.emplace_back(0, c.dim(c.top()));
  c.stable_through = c.top();
  (void)verify_complex(c);
  return c;
}

ComplexReport verify_complex(const CochainComplex& c, std::optional<int> through) {
  if (c.differentials.size() != c.space.dims.size())
    throw DimensionError("complex has " + std::to_string(c.space.dims.size()) + " degrees but " +
                         std::to_string(c.differentials.size()) + " differentials");
  for (int n = 0; n <= c.top(); ++n) {
    const Matrix& d = c.differentials[static_cast<std::size_t>(n)];
    if (d.rows() != c.dim(n + 1) || d.cols() != c.dim(n))
      throw DimensionError("d_" + std::to_string(n) + " is " + std::to_string(d.rows()) + "x" +
                           std::to_string(d.cols()) + ", expected " + std::to_string(c.dim(n + 1)) + "x" +
                           std::to_string(c.dim(n)));
  }
  ComplexReport report;
  const int last = std::min(c.top() - 1, through.value_or(c.top()));
  for (int n = 0; n <= last; ++n) {
    const Matrix square = c.differential(n + 1) * c.differential(n);
    for (std::size_t j = 0; j < square.cols(); ++j) {
      if (!is_zero(square.column(j))) {
        report.ok = false;
        report.failing_degree = n;
        report.witness = j;
        report.message = "d_" + std::to_string(n + 1) + " d_" + std::to_string(n) + " != 0 on basis vector " +
                         std::to_string(j) + " of degree " + std::to_string(n);
        return report;
      }
    }
  }
  report.message = "d^2 = 0";
  return report;
}

std::optional<Vector> Cohomology::class_of(int n, const Vector& z) const {
  if (n < 0 || n >= static_cast<int>(dims.size())) return std::nullopt;
  return classes[static_cast<std::size_t>(n)].coordinates(z);
}

Cohomology cohomology(const CochainComplex& c) {
  const int top = c.top();
  const auto n_degrees = static_cast<std::size_t>(top + 1);
  Cohomology h;
  h.dims.assign(n_degrees, 0);
  h.representatives.resize(n_degrees);
  h.boundaries.resize(n_degrees);
  h.classes.resize(n_degrees);
  h.stable_through = c.stable_through;

#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= top; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    const std::vector<Vector> cycles = null_space(c.differential(n));
    std::vector<Vector> boundaries = column_space(c.differential(n - 1));
    EchelonBasis image(c.dim(n));
    for (const auto& b : boundaries) image.insert(b);
    EchelonBasis running = image;
    std::vector<Vector> reps;
    for (const auto& z : cycles) {
      if (running.insert(z)) reps.push_back(image.reduce(z));
    }
    h.dims[idx] = reps.size();
    h.classes[idx] = CoordinateSystem(c.dim(n), boundaries, reps);
    h.representatives[idx] = std::move(reps);
    h.boundaries[idx] = std::move(boundaries);
  }
  return h;
}

std::vector<std::size_t> cohomology_dims(const CochainComplex& c) { return cohomology(c).dims; }

long long euler_characteristic(const std::vector<std::size_t>& dims) {
  long long chi = 0;
  for (std::size_t n = 0; n < dims.size(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(dims[n]);
  return chi;
}

namespace {

Matrix map_at(const std::vector<Matrix>& maps, int n, std::size_t rows, std::size_t cols) {
  if (n < 0 || static_cast<std::size_t>(n) >= maps.size()) return Matrix(rows, cols);
  return maps[static_cast<std::size_t>(n)];
}

/// Matrix of the map induced on cohomology by a chain map `f` in degree n.
Matrix induced_map(const Cohomology& source, const Cohomology& target, const Matrix& f, int n) {
  const auto& reps = source.representatives[static_cast<std::size_t>(n)];
  Matrix out(target.dims[static_cast<std::size_t>(n)], reps.size());
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const auto coords = target.class_of(n, f * reps[j]);
    if (!coords) throw std::logic_error("chain map does not send cocycles to cocycles");
    for (std::size_t i = 0; i < coords->size(); ++i) out(i, j) = (*coords)[i];
  }
  return out;
}

std::vector<std::size_t> padded(std::vector<std::size_t> dims, std::size_t n) {
  dims.resize(n, 0);
  return dims;
}

}  // namespace

LesReport les_exactness_check(const ShortExactSequence& ses) {
  LesReport report;
  const int top = std::max({ses.sub.top(), ses.middle.top(), ses.quotient.top()});
  const int stable = std::min({ses.sub.stable_through, ses.middle.stable_through, ses.quotient.stable_through, top});

  auto fail_ses = [&](int n, std::string msg) {
    report.status = LesStatus::not_short_exact;
    report.failing_degree = n;
    report.message = std::move(msg);
    return report;
  };

  for (const auto* c : {&ses.sub, &ses.middle, &ses.quotient}) {
    const auto r = verify_complex(*c);
    if (!r.ok) return fail_ses(*r.failing_degree, "input is not a complex: " + r.message);
  }

  for (int n = 0; n <= top; ++n) {
    const std::size_t a = ses.sub.dim(n), b = ses.middle.dim(n), q = ses.quotient.dim(n);
    const Matrix f = map_at(ses.inclusion, n, b, a);
    const Matrix g = map_at(ses.projection, n, q, b);
    if (f.rows() != b || f.cols() != a || g.rows() != q || g.cols() != b)
      throw DimensionError("SES map shapes disagree with complex dimensions in degree " + std::to_string(n));
    if (rank(f) != a) return fail_ses(n, "inclusion is not injective in degree " + std::to_string(n));
    if (rank(g) != q) return fail_ses(n, "projection is not surjective in degree " + std::to_string(n));
    if (!(g * f).is_zero()) return fail_ses(n, "projection after inclusion is nonzero in degree " + std::to_string(n));
    if (b != a + q) return fail_ses(n, "middle dimension is not sub + quotient in degree " + std::to_string(n));
    const Matrix f_next = map_at(ses.inclusion, n + 1, ses.middle.dim(n + 1), ses.sub.dim(n + 1));
    const Matrix g_next = map_at(ses.projection, n + 1, ses.quotient.dim(n + 1), ses.middle.dim(n + 1));
    if (!(ses.middle.differential(n) * f == f_next * ses.sub.differential(n)))
      return fail_ses(n, "inclusion is not a chain map in degree " + std::to_string(n));
    if (!(ses.quotient.differential(n) * g == g_next * ses.middle.differential(n)))
      return fail_ses(n, "projection is not a chain map in degree " + std::to_string(n));
  }

  const Cohomology ha = cohomology(ses.sub);
  const Cohomology hb = cohomology(ses.middle);
  const Cohomology hc = cohomology(ses.quotient);
  const auto n_deg = static_cast<std::size_t>(top + 1);
  report.sub_h = padded(ha.dims, n_deg);
  report.middle_h = padded(hb.dims, n_deg);
  report.quotient_h = padded(hc.dims, n_deg);
  report.inclusion_rank.assign(n_deg, 0);
  report.projection_rank.assign(n_deg, 0);
  report.connecting_rank.assign(n_deg, 0);

  std::vector<Matrix> f_star(n_deg), g_star(n_deg), delta(n_deg);
  for (int n = 0; n <= top; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const std::size_t a = ses.sub.dim(n), b = ses.middle.dim(n), q = ses.quotient.dim(n);
    auto hdim = [](const Cohomology& h, int k) {
      return (k < 0 || k >= static_cast<int>(h.dims.size())) ? std::size_t{0} : h.dims[static_cast<std::size_t>(k)];
    };
    if (n > ses.sub.top() || n > ses.middle.top()) {
      f_star[i] = Matrix(hdim(hb, n), hdim(ha, n));
    } else {
      f_star[i] = induced_map(ha, hb, map_at(ses.inclusion, n, b, a), n);
    }
    if (n > ses.middle.top() || n > ses.quotient.top()) {
      g_star[i] = Matrix(hdim(hc, n), hdim(hb, n));
    } else {
      g_star[i] = induced_map(hb, hc, map_at(ses.projection, n, q, b), n);
    }
    // Connecting map: lift, differentiate, pull back along the inclusion.
    delta[i] = Matrix(hdim(ha, n + 1), hdim(hc, n));
    if (n <= ses.quotient.top() && n + 1 <= ses.sub.top()) {
      const Matrix g = map_at(ses.projection, n, q, b);
      const Matrix f_next = map_at(ses.inclusion, n + 1, ses.middle.dim(n + 1), ses.sub.dim(n + 1));
      const auto& reps = hc.representatives[i];
      for (std::size_t j = 0; j < reps.size(); ++j) {
        const auto lift = solve(g, reps[j]);
        const auto pulled = lift ? solve(f_next, ses.middle.differential(n) * *lift) : std::nullopt;
        const auto coords = pulled ? ha.class_of(n + 1, *pulled) : std::nullopt;
        if (!coords) throw std::logic_error("connecting map construction failed on a verified SES");
        for (std::size_t r = 0; r < coords->size(); ++r) delta[i](r, j) = (*coords)[r];
      }
    }
    report.inclusion_rank[i] = rank(f_star[i]);
    report.projection_rank[i] = rank(g_star[i]);
    report.connecting_rank[i] = rank(delta[i]);
  }

  auto fail_les = [&](int n, std::string msg) {
    report.status = LesStatus::not_exact;
    report.failing_degree = n;
    report.message = std::move(msg);
    return report;
  };
  for (int n = 0; n <= stable; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const std::size_t delta_in = n > 0 ? report.connecting_rank[i - 1] : 0;
    if (!(g_star[i] * f_star[i]).is_zero()) return fail_les(n, "g_* f_* != 0");
    if (!(delta[i] * g_star[i]).is_zero()) return fail_les(n, "delta g_* != 0");
    if (n > 0 && !(f_star[i] * delta[i - 1]).is_zero()) return fail_les(n, "f_* delta != 0");
    if (report.sub_h[i] - report.inclusion_rank[i] != delta_in)
      return fail_les(n, "not exact at H^" + std::to_string(n) + "(sub)");
    if (report.middle_h[i] - report.projection_rank[i] != report.inclusion_rank[i])
      return fail_les(n, "not exact at H^" + std::to_string(n) + "(middle)");
    if (report.quotient_h[i] - report.connecting_rank[i] != report.projection_rank[i])
      return fail_les(n, "not exact at H^" + std::to_string(n) + "(quotient)");
  }
  report.message = "long exact sequence verified through degree " + std::to_string(stable);
  return report;
}

}  // namespace foliacoh
