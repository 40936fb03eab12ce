#include "foliacoh/cartan.hpp"

#include <algorithm>
#include <map>

namespace foliacoh {

std::size_t CartanSlice::dim() const {
  std::size_t total = 0;
  for (const auto& c : cells) total += c.invariants.size();
  return total;
}

std::vector<std::size_t> CartanSlice::bigraded_dims() const {
  std::vector<std::size_t> out;
  for (const auto& c : cells) out.push_back(c.invariants.size());
  return out;
}

Vector CartanComplex::to_full(int n, const Vector& invariant) const {
  const CartanSlice& slice = slices.at(static_cast<std::size_t>(n));
  Vector full(slice.full_dim());
  for (const auto& cell : slice.cells)
    for (std::size_t k = 0; k < cell.invariants.size(); ++k) {
      const Rational& c = invariant[cell.invariant_offset + k];
      if (sgn(c) == 0) continue;
      for (std::size_t i = 0; i < cell.full_size; ++i) full[cell.full_offset + i] += c * cell.invariants[k][i];
    }
  return full;
}

std::optional<Vector> CartanComplex::to_invariant(int n, const Vector& full) const {
  const CartanSlice& slice = slices.at(static_cast<std::size_t>(n));
  Vector out(slice.dim());
  for (const auto& cell : slice.cells) {
    Vector part(full.begin() + static_cast<std::ptrdiff_t>(cell.full_offset),
                full.begin() + static_cast<std::ptrdiff_t>(cell.full_offset + cell.full_size));
    if (!projected) {
      std::copy(part.begin(), part.end(), out.begin() + static_cast<std::ptrdiff_t>(cell.invariant_offset));
      continue;
    }
    if (is_zero(part)) continue;
    const CoordinateSystem coords(cell.full_size, {}, cell.invariants);
    const auto c = coords.coordinates(part);
    if (!c) return std::nullopt;
    std::copy(c->begin(), c->end(), out.begin() + static_cast<std::ptrdiff_t>(cell.invariant_offset));
  }
  return out;
}

int CartanComplex::filtration(int n, std::size_t k) const {
  for (const auto& cell : slices.at(static_cast<std::size_t>(n)).cells)
    if (k >= cell.invariant_offset && k < cell.invariant_offset + cell.invariants.size()) return cell.p;
  throw std::out_of_range("invariant index out of range");
}

namespace {

struct MonomialIndex {
  std::vector<std::vector<Exponent>> by_degree;
  std::vector<std::map<Exponent, std::size_t>> position;

  MonomialIndex(std::size_t r, int max_p) {
    for (int p = 0; p <= max_p; ++p) {
      by_degree.push_back(monomials_of_degree(r, p));
      std::map<Exponent, std::size_t> pos;
      for (std::size_t i = 0; i < by_degree.back().size(); ++i) pos[by_degree.back()[i]] = i;
      position.push_back(std::move(pos));
    }
  }
  std::size_t count(int p) const { return by_degree[static_cast<std::size_t>(p)].size(); }
  std::size_t index(const Exponent& e) const { return position[static_cast<std::size_t>(exponent_degree(e))].at(e); }
};

// Coadjoint action of X_j on u^alpha, extended as a derivation; L u^a = -c^a_{jc} u^c.
std::vector<std::pair<Exponent, Rational>> coadjoint(const LieAlgebra& g, std::size_t j, const Exponent& alpha) {
  std::map<Exponent, Rational> acc;
  for (std::size_t a = 0; a < alpha.size(); ++a) {
    if (alpha[a] == 0) continue;
    for (std::size_t c = 0; c < g.dim; ++c) {
      if (sgn(g.c(j, c, a)) == 0) continue;
      Exponent e = alpha;
      --e[a];
      ++e[c];
      acc[e] -= alpha[a] * g.c(j, c, a);
    }
  }
  std::vector<std::pair<Exponent, Rational>> out;
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) out.emplace_back(e, c);
  return out;
}

}  // namespace

CartanComplex cartan_complex(const GStarStructure& s, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("window must be >= 0");
  s.check_shapes();
  const std::size_t r = s.lie.dim;
  const int top_slice = max_degree + 1;
  const MonomialIndex mons(r, top_slice / 2 + 1);

  CartanComplex out;
  out.dim_g = r;
  out.window = max_degree;
  out.projected = !s.lie_derivatives_vanish() || !s.lie.is_abelian();

  std::vector<Matrix> d_mats, l_mats;
  std::vector<std::vector<Matrix>> i_mats(r), lie_mats(r);
  for (int k = 0; k <= std::max(s.top(), 0); ++k) {
    d_mats.push_back(s.d_at(k));
    for (std::size_t j = 0; j < r; ++j) {
      i_mats[j].push_back(s.i_at(j, k));
      lie_mats[j].push_back(s.l_at(j, k));
    }
  }
  auto a_dim = [&](int k) { return s.dim(k); };

  out.slices.resize(static_cast<std::size_t>(top_slice) + 1);
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= top_slice; ++n) {
    CartanSlice& slice = out.slices[static_cast<std::size_t>(n)];
    slice.degree = n;
    for (int p = 0; 2 * p <= n; ++p) {
      const int k = n - 2 * p;
      CartanCell cell;
      cell.p = p;
      cell.full_offset = slice.basis.size();
      for (const auto& alpha : mons.by_degree[static_cast<std::size_t>(p)])
        for (std::size_t a = 0; a < a_dim(k); ++a) slice.basis.push_back({alpha, k, a});
      cell.full_size = slice.basis.size() - cell.full_offset;
      if (!out.projected) {
        for (std::size_t i = 0; i < cell.full_size; ++i) cell.invariants.push_back(unit_vector(cell.full_size, i));
      } else if (cell.full_size > 0) {
        std::vector<Matrix> blocks;
        const std::size_t dk = a_dim(k);
        for (std::size_t j = 0; j < r; ++j) {
          Matrix m(cell.full_size, cell.full_size);
          for (std::size_t ai = 0; ai < mons.count(p); ++ai) {
            const Exponent& alpha = mons.by_degree[static_cast<std::size_t>(p)][ai];
            const auto poly = coadjoint(s.lie, j, alpha);
            for (std::size_t a = 0; a < dk; ++a) {
              const std::size_t col = ai * dk + a;
              for (const auto& [e, c] : poly) m(mons.index(e) * dk + a, col) += c;
              const Matrix& la = lie_mats[j][static_cast<std::size_t>(k)];
              for (std::size_t b = 0; b < dk; ++b) m(ai * dk + b, col) += la(b, a);
            }
          }
          blocks.push_back(std::move(m));
        }
        cell.invariants = null_space(vstack(blocks, cell.full_size));
      }
      slice.cells.push_back(std::move(cell));
    }
  }
  for (auto& slice : out.slices) {
    std::size_t off = 0;
    for (auto& cell : slice.cells) {
      cell.invariant_offset = off;
      off += cell.invariants.size();
    }
  }

  // d_g in full coordinates, then back to invariant coordinates.
  auto full_index = [&](int n, int p, const Exponent& alpha, std::size_t a) {
    const CartanCell& cell = out.slices[static_cast<std::size_t>(n)].cells[static_cast<std::size_t>(p)];
    return cell.full_offset + mons.index(alpha) * a_dim(n - 2 * p) + a;
  };
  std::vector<Matrix> diffs(static_cast<std::size_t>(top_slice) + 1);
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= top_slice; ++n) {
    const CartanSlice& src = out.slices[static_cast<std::size_t>(n)];
    if (n == top_slice) {
      diffs[static_cast<std::size_t>(n)] = Matrix(0, src.dim());
      continue;
    }
    const CartanSlice& dst = out.slices[static_cast<std::size_t>(n) + 1];
    Matrix dn(dst.dim(), src.dim());
    for (std::size_t col = 0; col < src.dim(); ++col) {
      const Vector full = out.to_full(n, unit_vector(src.dim(), col));
      Vector image(dst.full_dim());
      for (std::size_t f = 0; f < full.size(); ++f) {
        if (sgn(full[f]) == 0) continue;
        const CartanBasisElement& e = src.basis[f];
        const int k = e.form_degree, p = exponent_degree(e.alpha);
        const Matrix& d = d_mats[static_cast<std::size_t>(k)];
        for (std::size_t b = 0; b < d.rows(); ++b)
          if (sgn(d(b, e.index)) != 0) image[full_index(n + 1, p, e.alpha, b)] += full[f] * d(b, e.index);
        if (k == 0) continue;
        for (std::size_t j = 0; j < r; ++j) {
          const Matrix& i = i_mats[j][static_cast<std::size_t>(k)];
          Exponent shifted = e.alpha;
          ++shifted[j];
          for (std::size_t b = 0; b < i.rows(); ++b)
            if (sgn(i(b, e.index)) != 0) image[full_index(n + 1, p + 1, shifted, b)] += full[f] * i(b, e.index);
        }
      }
      const auto coords = out.to_invariant(n + 1, image);
      if (!coords) throw std::logic_error("d_g leaves the invariant subspace in degree " + std::to_string(n));
      for (std::size_t row = 0; row < coords->size(); ++row) dn(row, col) = (*coords)[row];
    }
    diffs[static_cast<std::size_t>(n)] = std::move(dn);
  }
  for (const auto& slice : out.slices) out.complex.space.dims.push_back(slice.dim());
  out.complex.differentials = std::move(diffs);
  out.stable_through = s.truncated ? std::min(max_degree, s.stable_through()) : max_degree;
  out.complex.stable_through = out.stable_through;
  out.d_squared = verify_complex(out.complex, out.stable_through);
  return out;
}

EquivariantCohomology equivariant_cohomology(const GStarStructure& s, int max_degree) {
  EquivariantCohomology e;
  e.cartan = cartan_complex(s, max_degree);
  e.h = cohomology(e.cartan.complex);
  e.window = max_degree;
  e.stable_through = e.cartan.stable_through;
  e.dims.assign(e.h.dims.begin(), e.h.dims.begin() + max_degree + 1);
  if (!s.lie.is_abelian()) return e;

  const std::size_t r = s.lie.dim;
  const CartanComplex& c = e.cartan;
  e.u_action.assign(r, {});
  for (std::size_t i = 0; i < r; ++i)
    for (int n = 0; n + 2 <= max_degree; ++n) {
      const auto& reps = e.h.representatives[static_cast<std::size_t>(n)];
      const CartanSlice& src = c.slices[static_cast<std::size_t>(n)];
      const CartanSlice& dst = c.slices[static_cast<std::size_t>(n) + 2];
      Matrix m(e.h.dims[static_cast<std::size_t>(n) + 2], reps.size());
      for (std::size_t k = 0; k < reps.size(); ++k) {
        const Vector full = c.to_full(n, reps[k]);
        Vector shifted(dst.full_dim());
        for (std::size_t f = 0; f < full.size(); ++f) {
          if (sgn(full[f]) == 0) continue;
          const CartanBasisElement& b = src.basis[f];
          Exponent alpha = b.alpha;
          ++alpha[i];
          const CartanCell& cell = dst.cells[static_cast<std::size_t>(exponent_degree(alpha))];
          const auto mon = monomials_of_degree(r, exponent_degree(alpha));
          const auto pos = static_cast<std::size_t>(std::find(mon.begin(), mon.end(), alpha) - mon.begin());
          shifted[cell.full_offset + pos * s.dim(b.form_degree) + b.index] += full[f];
        }
        const auto inv = c.to_invariant(n + 2, shifted);
        const auto cls = inv ? e.h.class_of(n + 2, *inv) : std::nullopt;
        if (!cls) throw std::logic_error("u-multiplication does not preserve cocycles");
        for (std::size_t row = 0; row < cls->size(); ++row) m(row, k) = (*cls)[row];
      }
      e.u_action[i].push_back(std::move(m));
    }

  for (int n = 0; n <= e.stable_through; ++n) {
    EchelonBasis image(e.dims[static_cast<std::size_t>(n)]);
    if (n >= 2)
      for (std::size_t i = 0; i < r; ++i) {
        const Matrix& m = e.u_action[i][static_cast<std::size_t>(n) - 2];
        for (std::size_t k = 0; k < m.cols(); ++k) image.insert(m.column(k));
      }
    for (std::size_t k = image.rank(); k < e.dims[static_cast<std::size_t>(n)]; ++k) e.generator_degrees.push_back(n);
  }
  return e;
}

GradedModulePresentation module_presentation(const EquivariantCohomology& e) {
  const std::size_t r = e.cartan.dim_g;
  if (e.u_action.size() != r) throw HypothesisError("module structure needs an abelian Lie algebra");
  const int window = e.stable_through;

  // Generators: classes not reached from lower degrees, lowest index first.
  std::vector<int> gen_degrees;
  std::vector<Vector> gen_classes;
  for (int n = 0; n <= window; ++n) {
    const std::size_t h = e.dims[static_cast<std::size_t>(n)];
    EchelonBasis image(h);
    if (n >= 2)
      for (std::size_t i = 0; i < r; ++i) {
        const Matrix& m = e.u_action[i][static_cast<std::size_t>(n) - 2];
        for (std::size_t k = 0; k < m.cols(); ++k) image.insert(m.column(k));
      }
    for (std::size_t k = 0; k < h; ++k) {
      const Vector v = unit_vector(h, k);
      if (image.contains(v)) continue;
      image.insert(v);
      gen_degrees.push_back(n);
      gen_classes.push_back(v);
    }
  }

  GradedModulePresentation pres = GradedModulePresentation::free(r, gen_degrees, window);
  const GradedModule free_module(pres);
  auto act = [&](Vector v, int degree, const Exponent& alpha) {
    for (std::size_t i = 0; i < r; ++i)
      for (int t = 0; t < alpha[i]; ++t) {
        v = e.u_action[i][static_cast<std::size_t>(degree)] * v;
        degree += 2;
      }
    return v;
  };

  for (int n = 0; n <= window; ++n) {
    const auto& basis = free_module.free_basis(n);
    Matrix phi(e.dims[static_cast<std::size_t>(n)], basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const auto& b = basis[col];
      const Vector image = act(gen_classes[b.generator], gen_degrees[b.generator], b.exponent);
      for (std::size_t row = 0; row < image.size(); ++row) phi(row, col) = image[row];
    }
    EchelonBasis known(basis.size());
    for (std::size_t k = 0; k < pres.relations.size(); ++k) {
      const int dk = pres.relation_degree(k);
      if (dk > n || (n - dk) % 2 != 0) continue;
      for (const auto& beta : monomials_of_degree(r, (n - dk) / 2)) {
        FreeElement shifted;
        for (const auto& poly : pres.relations[k]) shifted.push_back(poly * MultiPolynomial::term(beta, 1));
        known.insert(free_module.free_coordinates(n, shifted));
      }
    }
    for (const auto& v : null_space(phi)) {
      if (known.contains(v)) continue;
      known.insert(v);
      FreeElement rel(gen_degrees.size(), MultiPolynomial(r));
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(v[k]) != 0) rel[basis[k].generator].add_term(basis[k].exponent, v[k]);
      pres.relations.push_back(std::move(rel));
    }
  }
  pres.validate();
  return pres;
}

ReductionReport commuting_reduction_check(const GStarStructure& s, std::size_t h_dim,
                                          const std::vector<Vector>& theta, int max_degree) {
  ReductionReport report;
  if (h_dim > s.lie.dim) {
    report.message = "h has more generators than g";
    return report;
  }
  const auto axioms = check_gstar_axioms(s);
  if (!axioms.ok()) {
    for (const auto& a : axioms.axioms)
      if (!a.ok) {
        report.message = "axiom " + a.name + " fails at " + a.witness;
        return report;
      }
  }
  const std::size_t k_dim = s.lie.dim - h_dim;
  for (std::size_t i = 0; i < s.lie.dim; ++i)
    for (std::size_t j = 0; j < s.lie.dim; ++j)
      for (std::size_t l = 0; l < s.lie.dim; ++l) {
        const bool i_h = i < h_dim, j_h = j < h_dim, l_h = l < h_dim;
        if (sgn(s.lie.c(i, j, l)) != 0 && !(i_h == j_h && j_h == l_h)) {
          report.message = "g is not the product of h and k";
          return report;
        }
      }
  const GStarStructure h_part = restrict_lie(s, 0, h_dim);
  if (!detect_type_c(h_part, theta).type_c) {
    report.message = "A is not of type (C) for h with the given connection elements";
    return report;
  }
  if (!restrict_lie(s, h_dim, k_dim).lie_derivatives_vanish()) {
    report.message = "k acts with nonzero Lie derivatives";
    return report;
  }
  const auto lhs = equivariant_cohomology(s, max_degree);
  const auto rhs = equivariant_cohomology(restrict_to_basic(s, h_dim), max_degree);
  report.product_dims = lhs.dims;
  report.reduced_dims = rhs.dims;
  report.stable_through = std::min(lhs.stable_through, rhs.stable_through);
  report.status = ReductionStatus::agree;
  for (int n = 0; n <= report.stable_through; ++n)
    if (lhs.dims[static_cast<std::size_t>(n)] != rhs.dims[static_cast<std::size_t>(n)]) {
      report.status = ReductionStatus::disagree;
      report.message = "dimensions differ in degree " + std::to_string(n);
      return report;
    }
  report.message = "dimensions agree through degree " + std::to_string(report.stable_through);
  return report;
}

}  // namespace foliacoh
