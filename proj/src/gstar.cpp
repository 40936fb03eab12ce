#include "foliacoh/gstar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>

namespace foliacoh {

// ---------------------------------------------------------------------------
// Lie algebras

LieAlgebra LieAlgebra::abelian(std::size_t r) {
  LieAlgebra g;
  g.dim = r;
  g.constants.assign(r * r * r, Rational(0));
  return g;
}

LieAlgebra LieAlgebra::direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  LieAlgebra g = abelian(a.dim + b.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k) g.c(i, j, k) = a.c(i, j, k);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t k = 0; k < b.dim; ++k) g.c(a.dim + i, a.dim + j, a.dim + k) = b.c(i, j, k);
  return g;
}

LieAlgebra LieAlgebra::so3() {
  LieAlgebra g = abelian(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    g.c(i, j, k) = 1;
    g.c(j, i, k) = -1;
  }
  return g;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(constants.begin(), constants.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::optional<std::string> LieAlgebra::check() const {
  if (constants.size() != dim * dim * dim) return "structure constant table has the wrong size";
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (c(i, j, k) != -c(j, i, k))
          return "antisymmetry fails for c^" + std::to_string(k + 1) + "_{" + std::to_string(i + 1) +
                 std::to_string(j + 1) + "}";
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = 0; l < dim; ++l) {
          Rational s = 0;
          for (std::size_t m = 0; m < dim; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          if (sgn(s) != 0)
            return "Jacobi identity fails for X_" + std::to_string(i + 1) + ", X_" + std::to_string(j + 1) + ", X_" +
                   std::to_string(k + 1);
        }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Product table and structure accessors

const SparseVector* ProductTable::find(std::size_t a, std::size_t b) const {
  const auto it = entries.find(static_cast<std::uint64_t>(a) * stride + b);
  return it == entries.end() ? nullptr : &it->second;
}

void ProductTable::set(std::size_t a, std::size_t b, SparseVector v) {
  const auto key = static_cast<std::uint64_t>(a) * stride + b;
  if (v.empty()) {
    entries.erase(key);
  } else {
    entries[key] = std::move(v);
  }
}

std::size_t GStarStructure::offset(int n) const {
  std::size_t off = 0;
  for (int k = 0; k < std::min(n, top() + 1); ++k) off += dim(k);
  return off;
}

std::string GStarStructure::label(int n, std::size_t i) const {
  const auto deg = static_cast<std::size_t>(n);
  if (deg < space.labels.size() && i < space.labels[deg].size()) return space.labels[deg][i];
  return "e" + std::to_string(n) + "_" + std::to_string(i);
}

Matrix GStarStructure::d_at(int n) const {
  if (n < 0 || n >= top()) return Matrix(dim(n + 1), dim(n));
  return d[static_cast<std::size_t>(n)];
}

Matrix GStarStructure::i_at(std::size_t j, int n) const {
  if (n <= 0 || n > top()) return Matrix(dim(n - 1), dim(n));
  return contraction.at(j)[static_cast<std::size_t>(n)];
}

Matrix GStarStructure::l_at(std::size_t j, int n) const {
  if (n < 0 || n > top()) return Matrix(dim(n), dim(n));
  return lie_derivative.at(j)[static_cast<std::size_t>(n)];
}

bool GStarStructure::lie_derivatives_vanish() const {
  for (const auto& per_generator : lie_derivative)
    for (const auto& m : per_generator)
      if (!m.is_zero()) return false;
  return true;
}

CochainComplex GStarStructure::complex() const {
  CochainComplex c;
  c.space = space;
  for (int n = 0; n <= top(); ++n) c.differentials.push_back(d_at(n));
  c.stable_through = stable_through();
  return c;
}

Vector GStarStructure::multiply(int p, const Vector& x, int q, const Vector& y) const {
  if (!products) throw std::logic_error("structure has no product table");
  Vector out(dim(p + q));
  if (p < 0 || q < 0 || p + q > top()) return out;
  const std::size_t op = offset(p), oq = offset(q);
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (sgn(y[b]) == 0) continue;
      const SparseVector* v = products->find(op + a, oq + b);
      if (!v) continue;
      const Rational coeff = x[a] * y[b];
      for (const auto& [idx, c] : *v) out[idx] += coeff * c;
    }
  }
  return out;
}

void GStarStructure::check_shapes() const {
  auto expect = [](const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
    if (m.rows() != rows || m.cols() != cols)
      throw DimensionError(what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                           std::to_string(rows) + "x" + std::to_string(cols));
  };
  const auto n_deg = static_cast<std::size_t>(top() + 1);
  if (d.size() != n_deg) throw DimensionError("d must have one matrix per degree");
  if (contraction.size() != lie.dim || lie_derivative.size() != lie.dim)
    throw DimensionError("need one contraction and one Lie derivative per Lie algebra generator");
  for (int n = 0; n <= top(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    expect(d[i], n == top() ? 0 : dim(n + 1), dim(n), "d_" + std::to_string(n));
    for (std::size_t j = 0; j < lie.dim; ++j) {
      if (contraction[j].size() != n_deg || lie_derivative[j].size() != n_deg)
        throw DimensionError("operator for generator " + std::to_string(j + 1) + " has the wrong number of degrees");
      expect(contraction[j][i], n == 0 ? 0 : dim(n - 1), dim(n), "i_" + std::to_string(j + 1) + " in degree " + std::to_string(n));
      expect(lie_derivative[j][i], dim(n), dim(n), "L_" + std::to_string(j + 1) + " in degree " + std::to_string(n));
    }
  }
}

namespace {

GStarStructure empty_structure(const LieAlgebra& lie, std::vector<std::size_t> dims) {
  GStarStructure s;
  s.lie = lie;
  s.space.dims = std::move(dims);
  const int top = s.top();
  for (int n = 0; n <= top; ++n) s.d.emplace_back(n == top ? 0 : s.dim(n + 1), s.dim(n));
  s.contraction.assign(lie.dim, {});
  s.lie_derivative.assign(lie.dim, {});
  for (std::size_t j = 0; j < lie.dim; ++j)
    for (int n = 0; n <= top; ++n) {
      s.contraction[j].emplace_back(n == 0 ? 0 : s.dim(n - 1), s.dim(n));
      s.lie_derivative[j].emplace_back(s.dim(n), s.dim(n));
    }
  return s;
}

void set_column(Matrix& m, std::size_t col, const Vector& v) {
  for (std::size_t r = 0; r < v.size(); ++r) m(r, col) = v[r];
}

}  // namespace

// ---------------------------------------------------------------------------
// Builder

GStarBuilder& GStarBuilder::basis(const std::string& label, int degree) {
  if (degree < 0) throw std::invalid_argument("basis element '" + label + "' has negative degree");
  for (const auto& [l, d] : basis_)
    if (l == label) throw std::invalid_argument("duplicate basis label '" + label + "'");
  basis_.emplace_back(label, degree);
  return *this;
}

GStarBuilder& GStarBuilder::unit(const std::string& label) {
  unit_ = label;
  return *this;
}

GStarBuilder& GStarBuilder::product(const std::string& a, const std::string& b, Element value) {
  products_.emplace_back(a, b, std::move(value));
  return *this;
}

GStarBuilder& GStarBuilder::d(const std::string& a, Element value) {
  d_.emplace_back(a, std::move(value));
  return *this;
}

GStarBuilder& GStarBuilder::contraction(std::size_t j, const std::string& a, Element value) {
  contraction_.emplace_back(j, a, std::move(value));
  return *this;
}

GStarBuilder& GStarBuilder::lie_derivative(std::size_t j, const std::string& a, Element value) {
  lie_derivative_.emplace_back(j, a, std::move(value));
  return *this;
}

GStarBuilder& GStarBuilder::without_products() {
  with_products_ = false;
  return *this;
}

GStarBuilder& GStarBuilder::truncated(bool t) {
  truncated_ = t;
  return *this;
}

Vector GStarBuilder::coordinates(const GStarStructure& s, int degree, const Element& e) {
  Vector v(s.dim(degree));
  for (const auto& [label, coeff] : e) {
    bool found = false;
    for (int n = 0; n <= s.top() && !found; ++n) {
      for (std::size_t i = 0; i < s.dim(n); ++i) {
        if (s.label(n, i) != label) continue;
        if (n != degree)
          throw std::invalid_argument("'" + label + "' has degree " + std::to_string(n) + ", expected " +
                                      std::to_string(degree));
        v[i] += coeff;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown basis label '" + label + "'");
  }
  return v;
}

GStarStructure GStarBuilder::build() const {
  if (auto err = lie_.check()) throw std::invalid_argument("Lie algebra: " + *err);
  if (basis_.empty()) throw std::invalid_argument("algebra has no basis elements");
  int top = 0;
  for (const auto& [l, d] : basis_) top = std::max(top, d);
  std::vector<std::size_t> dims(static_cast<std::size_t>(top) + 1, 0);
  std::vector<std::vector<std::string>> labels(dims.size());
  std::map<std::string, std::pair<int, std::size_t>> where;
  for (const auto& [l, d] : basis_) {
    const auto deg = static_cast<std::size_t>(d);
    where[l] = {d, dims[deg]++};
    labels[deg].push_back(l);
  }
  GStarStructure s = empty_structure(lie_, dims);
  s.space.labels = std::move(labels);
  s.truncated = truncated_;
  auto locate = [&](const std::string& label) {
    const auto it = where.find(label);
    if (it == where.end()) throw std::invalid_argument("unknown basis label '" + label + "'");
    return it->second;
  };
  auto image = [&](const Element& e, int degree) {
    if (degree < 0 || degree > top) {
      for (const auto& [l, c] : e)
        if (sgn(c) != 0) throw std::invalid_argument("image of degree " + std::to_string(degree) + " is outside the window");
      return Vector{};
    }
    return coordinates(s, degree, e);
  };

  for (const auto& [a, e] : d_) {
    const auto [deg, idx] = locate(a);
    const Vector v = image(e, deg + 1);
    if (deg < top) set_column(s.d[static_cast<std::size_t>(deg)], idx, v);
  }
  for (const auto& [j, a, e] : contraction_) {
    if (j >= lie_.dim) throw std::invalid_argument("contraction for generator " + std::to_string(j + 1) + " out of range");
    const auto [deg, idx] = locate(a);
    const Vector v = image(e, deg - 1);
    if (deg > 0) set_column(s.contraction[j][static_cast<std::size_t>(deg)], idx, v);
  }
  for (const auto& [j, a, e] : lie_derivative_) {
    if (j >= lie_.dim) throw std::invalid_argument("Lie derivative for generator " + std::to_string(j + 1) + " out of range");
    const auto [deg, idx] = locate(a);
    set_column(s.lie_derivative[j][static_cast<std::size_t>(deg)], idx, image(e, deg));
  }

  if (unit_) {
    const auto [deg, idx] = locate(*unit_);
    if (deg != 0) throw std::invalid_argument("unit must have degree 0");
    s.unit = idx;
  }
  if (with_products_) {
    ProductTable table;
    table.stride = s.total();
    std::map<std::pair<std::size_t, std::size_t>, bool> explicit_pairs;
    auto global = [&](const std::string& l) {
      const auto [deg, idx] = locate(l);
      return std::pair{deg, s.offset(deg) + idx};
    };
    auto to_sparse = [](const Vector& v) {
      SparseVector sv;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) sv.emplace_back(i, v[i]);
      return sv;
    };
    for (const auto& [a, b, e] : products_) {
      const auto [da, ga] = global(a);
      const auto [db, gb] = global(b);
      table.set(ga, gb, to_sparse(image(e, da + db)));
      explicit_pairs[{ga, gb}] = true;
    }
    for (const auto& [a, b, e] : products_) {
      const auto [da, ga] = global(a);
      const auto [db, gb] = global(b);
      if (explicit_pairs.count({gb, ga})) continue;
      Vector v = image(e, da + db);
      if ((da * db) % 2 != 0)
        for (auto& x : v) x = -x;
      table.set(gb, ga, to_sparse(v));
      explicit_pairs[{gb, ga}] = true;
    }
    if (s.unit) {
      const std::size_t u = *s.unit;
      for (int n = 0; n <= top; ++n)
        for (std::size_t i = 0; i < s.dim(n); ++i) {
          const std::size_t g = s.offset(n) + i;
          SparseVector self{{i, Rational(1)}};
          if (!explicit_pairs.count({u, g})) table.set(u, g, self);
          if (!explicit_pairs.count({g, u})) table.set(g, u, self);
        }
    }
    s.products = std::move(table);
  }
  s.check_shapes();
  return s;
}

GStarStructure trivial_line(const LieAlgebra& lie) {
  return GStarBuilder(lie).basis("1", 0).unit("1").build();
}

// ---------------------------------------------------------------------------
// Axiom checks

bool AxiomReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.ok; });
}

const AxiomResult& AxiomReport::get(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a;
  throw std::out_of_range("no axiom named '" + name + "'");
}

namespace {

/// First nonzero column of m, if any.
std::optional<std::size_t> nonzero_column(const Matrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_zero(m.column(c))) return c;
  return std::nullopt;
}

AxiomResult axiom(std::string name) {
  AxiomResult a;
  a.name = std::move(name);
  return a;
}

std::string generator_name(std::size_t j) { return "X_" + std::to_string(j + 1); }

}  // namespace

AxiomReport check_gstar_axioms(const GStarStructure& s) {
  s.check_shapes();
  const int top = s.top();
  const std::size_t r = s.lie.dim;
  AxiomReport report;
  auto record = [&](AxiomResult& res, const Matrix& m, int n, const std::string& context) {
    if (!res.ok) return;
    if (auto c = nonzero_column(m)) {
      res.ok = false;
      res.witness = s.label(n, *c) + " (degree " + std::to_string(n) + ")" + (context.empty() ? "" : ", " + context);
    }
  };

  AxiomResult dd = axiom("d^2=0");
  for (int n = 0; n <= top; ++n) record(dd, s.d_at(n + 1) * s.d_at(n), n, "");
  report.axioms.push_back(dd);

  AxiomResult ii = axiom("i_X^2=0");
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = j; k < r; ++k)
      for (int n = 0; n <= top; ++n)
        record(ii, s.i_at(j, n - 1) * s.i_at(k, n) + s.i_at(k, n - 1) * s.i_at(j, n), n,
               generator_name(j) + ", " + generator_name(k));
  report.axioms.push_back(ii);

  AxiomResult ll = axiom("[L_X,L_Y]=L_[X,Y]");
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k)
      for (int n = 0; n <= top; ++n) {
        Matrix m = s.l_at(j, n) * s.l_at(k, n) - s.l_at(k, n) * s.l_at(j, n);
        for (std::size_t q = 0; q < r; ++q) {
          if (sgn(s.lie.c(j, k, q)) == 0) continue;
          Matrix l = s.l_at(q, n);
          for (std::size_t a = 0; a < l.rows(); ++a)
            for (std::size_t b = 0; b < l.cols(); ++b) m(a, b) -= s.lie.c(j, k, q) * l(a, b);
        }
        record(ll, m, n, generator_name(j) + ", " + generator_name(k));
      }
  report.axioms.push_back(ll);

  AxiomResult li = axiom("[L_X,i_Y]=i_[X,Y]");
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k)
      for (int n = 0; n <= top; ++n) {
        Matrix m = s.l_at(j, n - 1) * s.i_at(k, n) - s.i_at(k, n) * s.l_at(j, n);
        for (std::size_t q = 0; q < r; ++q) {
          if (sgn(s.lie.c(j, k, q)) == 0) continue;
          Matrix i = s.i_at(q, n);
          for (std::size_t a = 0; a < i.rows(); ++a)
            for (std::size_t b = 0; b < i.cols(); ++b) m(a, b) -= s.lie.c(j, k, q) * i(a, b);
        }
        record(li, m, n, generator_name(j) + ", " + generator_name(k));
      }
  report.axioms.push_back(li);

  AxiomResult cartan = axiom("L_X=di_X+i_Xd");
  for (std::size_t j = 0; j < r; ++j)
    for (int n = 0; n <= top; ++n) {
      if (s.truncated && n == top) continue;
      record(cartan, s.l_at(j, n) - s.d_at(n - 1) * s.i_at(j, n) - s.i_at(j, n + 1) * s.d_at(n), n, generator_name(j));
    }
  report.axioms.push_back(cartan);

  AxiomResult der_d = axiom("d derivation"), der_i = axiom("i_X derivation"), der_l = axiom("L_X derivation");
  if (!s.products) {
    for (auto* a : {&der_d, &der_i, &der_l}) {
      a->checked = false;
      a->witness = "no product table";
    }
  } else {
    std::vector<Matrix> d_mats, i_mats, l_mats;
    for (int n = 0; n <= top; ++n) d_mats.push_back(s.d_at(n));
    auto pair_witness = [&](int p, std::size_t a, int q, std::size_t b, const std::string& extra) {
      return s.label(p, a) + " * " + s.label(q, b) + (extra.empty() ? "" : " (" + extra + ")");
    };
    for (int p = 0; p <= top; ++p)
      for (int q = 0; p + q <= top + 1 && q <= top; ++q)
        for (std::size_t a = 0; a < s.dim(p); ++a)
          for (std::size_t b = 0; b < s.dim(q); ++b) {
            const Vector ea = unit_vector(s.dim(p), a);
            const Vector eb = unit_vector(s.dim(q), b);
            const Vector prod = s.multiply(p, ea, q, eb);
            const int sign = (p % 2 == 0) ? 1 : -1;
            if (der_d.ok) {
              const Vector lhs = s.d_at(p + q) * prod;
              Vector rhs = s.multiply(p + 1, s.d_at(p) * ea, q, eb);
              const Vector t = s.multiply(p, ea, q + 1, s.d_at(q) * eb);
              for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += sign * t[k];
              if (lhs != rhs) {
                der_d.ok = false;
                der_d.witness = pair_witness(p, a, q, b, "");
              }
            }
            for (std::size_t j = 0; j < r; ++j) {
              if (der_i.ok && !(s.truncated && p + q > top)) {
                const Vector lhs = s.i_at(j, p + q) * prod;
                Vector rhs = s.multiply(p - 1, s.i_at(j, p) * ea, q, eb);
                const Vector t = s.multiply(p, ea, q - 1, s.i_at(j, q) * eb);
                for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += sign * t[k];
                if (lhs != rhs) {
                  der_i.ok = false;
                  der_i.witness = pair_witness(p, a, q, b, generator_name(j));
                }
              }
              if (der_l.ok) {
                const Vector lhs = s.l_at(j, p + q) * prod;
                Vector rhs = s.multiply(p, s.l_at(j, p) * ea, q, eb);
                const Vector t = s.multiply(p, ea, q, s.l_at(j, q) * eb);
                for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += t[k];
                if (lhs != rhs) {
                  der_l.ok = false;
                  der_l.witness = pair_witness(p, a, q, b, generator_name(j));
                }
              }
            }
          }
  }
  report.axioms.push_back(der_d);
  report.axioms.push_back(der_i);
  report.axioms.push_back(der_l);
  return report;
}

AxiomReport check_graded_algebra(const GStarStructure& s) {
  AxiomReport report;
  AxiomResult unit = axiom("unit"), comm = axiom("graded commutativity"), assoc = axiom("associativity");
  if (!s.products) {
    for (auto* a : {&unit, &comm, &assoc}) {
      a->checked = false;
      a->witness = "no product table";
    }
    report.axioms = {unit, comm, assoc};
    return report;
  }
  const int top = s.top();
  if (!s.unit) {
    unit.ok = false;
    unit.witness = "no unit declared";
  } else {
    const Vector one = unit_vector(s.dim(0), *s.unit);
    for (int n = 0; n <= top && unit.ok; ++n)
      for (std::size_t i = 0; i < s.dim(n) && unit.ok; ++i) {
        const Vector x = unit_vector(s.dim(n), i);
        if (s.multiply(0, one, n, x) != x || s.multiply(n, x, 0, one) != x) {
          unit.ok = false;
          unit.witness = s.label(n, i);
        }
      }
  }
  for (int p = 0; p <= top && comm.ok; ++p)
    for (int q = 0; q <= top && comm.ok; ++q)
      for (std::size_t a = 0; a < s.dim(p) && comm.ok; ++a)
        for (std::size_t b = 0; b < s.dim(q) && comm.ok; ++b) {
          const Vector ea = unit_vector(s.dim(p), a), eb = unit_vector(s.dim(q), b);
          Vector ba = s.multiply(q, eb, p, ea);
          if ((p * q) % 2 != 0)
            for (auto& x : ba) x = -x;
          if (s.multiply(p, ea, q, eb) != ba) {
            comm.ok = false;
            comm.witness = s.label(p, a) + ", " + s.label(q, b);
          }
        }
  const std::size_t total = s.total();
  if (total * total * total > 8'000'000) {
    assoc.checked = false;
    assoc.witness = "skipped: " + std::to_string(total) + " basis elements";
  } else {
    for (int p = 0; p <= top && assoc.ok; ++p)
      for (int q = 0; p + q <= top && assoc.ok; ++q)
        for (int w = 0; p + q + w <= top && assoc.ok; ++w)
          for (std::size_t a = 0; a < s.dim(p) && assoc.ok; ++a)
            for (std::size_t b = 0; b < s.dim(q) && assoc.ok; ++b)
              for (std::size_t c = 0; c < s.dim(w) && assoc.ok; ++c) {
                const Vector ea = unit_vector(s.dim(p), a), eb = unit_vector(s.dim(q), b), ec = unit_vector(s.dim(w), c);
                if (s.multiply(p + q, s.multiply(p, ea, q, eb), w, ec) != s.multiply(p, ea, q + w, s.multiply(q, eb, w, ec))) {
                  assoc.ok = false;
                  assoc.witness = s.label(p, a) + ", " + s.label(q, b) + ", " + s.label(w, c);
                }
              }
  }
  report.axioms = {unit, comm, assoc};
  return report;
}

// ---------------------------------------------------------------------------
// Basic subcomplex

BasicSubcomplex basic_subcomplex(const GStarStructure& s) {
  const int top = s.top();
  const std::size_t r = s.lie.dim;
  std::vector<std::vector<Vector>> bases(static_cast<std::size_t>(top) + 1);
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= top; ++n) {
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < r; ++j) {
      blocks.push_back(s.i_at(j, n));
      blocks.push_back(s.l_at(j, n));
    }
    bases[static_cast<std::size_t>(n)] = null_space(vstack(blocks, s.dim(n)));
  }
  BasicSubcomplex out;
  for (int n = 0; n <= top; ++n) {
    const auto& basis = bases[static_cast<std::size_t>(n)];
    out.complex.space.dims.push_back(basis.size());
    out.inclusion.push_back(Matrix::from_columns(basis, s.dim(n)));
  }
  for (int n = 0; n <= top; ++n) {
    const auto& src = bases[static_cast<std::size_t>(n)];
    if (n == top) {
      out.complex.differentials.emplace_back(0, src.size());
      continue;
    }
    const auto& dst = bases[static_cast<std::size_t>(n) + 1];
    const CoordinateSystem coords(s.dim(n + 1), {}, dst);
    Matrix dn(dst.size(), src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
      const auto c = coords.coordinates(s.d_at(n) * src[k]);
      if (!c) throw std::logic_error("d does not preserve basic elements in degree " + std::to_string(n));
      set_column(dn, k, *c);
    }
    out.complex.differentials.push_back(std::move(dn));
  }
  out.complex.stable_through = s.stable_through();
  return out;
}

// ---------------------------------------------------------------------------
// Type (C)

TypeC detect_type_c(const GStarStructure& s, const std::vector<Vector>& candidates) {
  TypeC out;
  const std::size_t r = s.lie.dim;
  if (candidates.size() != r || s.top() < 1) return out;
  Vector one;
  if (s.unit) {
    one = unit_vector(s.dim(0), *s.unit);
  } else if (s.dim(0) == 1) {
    one = Vector{Rational(1)};
  } else {
    return out;
  }
  for (const auto& theta : candidates)
    if (theta.size() != s.dim(1)) throw DimensionError("connection candidate is not a degree-1 vector");
  out.free = true;
  for (std::size_t i = 0; i < r && out.free; ++i)
    for (std::size_t j = 0; j < r && out.free; ++j) {
      Vector expected = i == j ? one : Vector(s.dim(0));
      if (s.i_at(j, 1) * candidates[i] != expected) out.free = false;
    }
  if (!out.free) return out;
  EchelonBasis span(s.dim(1));
  for (const auto& theta : candidates) span.insert(theta);
  out.type_c = true;
  for (std::size_t j = 0; j < r && out.type_c; ++j)
    for (const auto& theta : candidates)
      if (!span.contains(s.l_at(j, 1) * theta)) out.type_c = false;
  return out;
}

// ---------------------------------------------------------------------------
// Tensor products

TensorResult tensor_gstar(const GStarStructure& a, const GStarStructure& b, std::optional<int> window) {
  if (!(a.lie == b.lie)) throw std::invalid_argument("tensor product needs the same Lie algebra on both factors");
  const int natural = a.top() + b.top();
  int top = window.value_or(natural);
  if (top < 0) throw std::invalid_argument("tensor window must be >= 0");
  if (a.truncated) top = std::min(top, a.top());
  if (b.truncated) top = std::min(top, b.top());
  top = std::min(top, natural);

  // basis of degree n: pairs (p, x, y) with x in A^p, y in B^{n-p}
  struct Pair {
    int p;
    std::size_t x, y;
  };
  std::vector<std::vector<Pair>> basis(static_cast<std::size_t>(top) + 1);
  std::map<std::tuple<int, int, std::size_t, std::size_t>, std::size_t> index;  // (n, p, x, y)
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels(basis.size());
  for (int n = 0; n <= top; ++n) {
    auto& list = basis[static_cast<std::size_t>(n)];
    for (int p = 0; p <= n; ++p)
      for (std::size_t x = 0; x < a.dim(p); ++x)
        for (std::size_t y = 0; y < b.dim(n - p); ++y) {
          index[{n, p, x, y}] = list.size();
          list.push_back({p, x, y});
          labels[static_cast<std::size_t>(n)].push_back(a.label(p, x) + "⊗" + b.label(n - p, y));
        }
    dims.push_back(list.size());
  }
  TensorResult result;
  result.overflow = window.has_value() && *window < natural;
  GStarStructure s = empty_structure(a.lie, dims);
  s.space.labels = std::move(labels);
  s.truncated = a.truncated || b.truncated || top < natural;

  // D(x (x) y) = D x (x) y + (-1)^{k|x|} x (x) D y, for an operator of degree k.
  auto apply = [&](Matrix& out, int n, int k, const std::function<Matrix(int)>& on_a,
                   const std::function<Matrix(int)>& on_b) {
    const int target = n + k;
    if (target < 0 || target > top) return;
    const auto& src = basis[static_cast<std::size_t>(n)];
    for (std::size_t col = 0; col < src.size(); ++col) {
      const auto [p, x, y] = src[col];
      const int q = n - p;
      const Matrix ma = on_a(p);
      for (std::size_t xi = 0; xi < ma.rows(); ++xi) {
        if (sgn(ma(xi, x)) == 0) continue;
        out(index.at({target, p + k, xi, y}), col) += ma(xi, x);
      }
      const Matrix mb = on_b(q);
      const int sign = (k % 2 != 0 && p % 2 != 0) ? -1 : 1;
      for (std::size_t yi = 0; yi < mb.rows(); ++yi) {
        if (sgn(mb(yi, y)) == 0) continue;
        out(index.at({target, p, x, yi}), col) += sign * mb(yi, y);
      }
    }
  };
  for (int n = 0; n <= top; ++n) {
    const auto i = static_cast<std::size_t>(n);
    apply(s.d[i], n, 1, [&](int p) { return a.d_at(p); }, [&](int q) { return b.d_at(q); });
    for (std::size_t j = 0; j < a.lie.dim; ++j) {
      apply(s.contraction[j][i], n, -1, [&](int p) { return a.i_at(j, p); }, [&](int q) { return b.i_at(j, q); });
      apply(s.lie_derivative[j][i], n, 0, [&](int p) { return a.l_at(j, p); }, [&](int q) { return b.l_at(j, q); });
    }
  }

  if (a.unit && b.unit) s.unit = index.at({0, 0, *a.unit, *b.unit});
  if (a.products && b.products) {
    ProductTable table;
    table.stride = s.total();
    for (int n = 0; n <= top; ++n)
      for (int m = 0; n + m <= top; ++m)
        for (std::size_t i1 = 0; i1 < s.dim(n); ++i1)
          for (std::size_t i2 = 0; i2 < s.dim(m); ++i2) {
            const auto [p1, x1, y1] = basis[static_cast<std::size_t>(n)][i1];
            const auto [p2, x2, y2] = basis[static_cast<std::size_t>(m)][i2];
            const int q1 = n - p1;
            const Vector xx = a.multiply(p1, unit_vector(a.dim(p1), x1), p2, unit_vector(a.dim(p2), x2));
            if (is_zero(xx)) continue;
            const Vector yy = b.multiply(q1, unit_vector(b.dim(q1), y1), m - p2, unit_vector(b.dim(m - p2), y2));
            if (is_zero(yy)) continue;
            const int sign = (q1 * p2) % 2 == 0 ? 1 : -1;
            std::map<std::size_t, Rational> acc;
            for (std::size_t xi = 0; xi < xx.size(); ++xi) {
              if (sgn(xx[xi]) == 0) continue;
              for (std::size_t yi = 0; yi < yy.size(); ++yi) {
                if (sgn(yy[yi]) == 0) continue;
                acc[index.at({n + m, p1 + p2, xi, yi})] += sign * xx[xi] * yy[yi];
              }
            }
            SparseVector sv;
            for (auto& [k, c] : acc)
              if (sgn(c) != 0) sv.emplace_back(k, c);
            table.set(s.offset(n) + i1, s.offset(m) + i2, std::move(sv));
          }
    s.products = std::move(table);
  }
  s.check_shapes();
  result.structure = std::move(s);
  return result;
}

// ---------------------------------------------------------------------------
// Restrictions

GStarStructure restrict_lie(const GStarStructure& s, std::size_t first, std::size_t count) {
  if (first + count > s.lie.dim) throw std::out_of_range("restrict_lie: generator range");
  GStarStructure out = s;
  out.lie = LieAlgebra::abelian(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      for (std::size_t k = 0; k < count; ++k) out.lie.c(i, j, k) = s.lie.c(first + i, first + j, first + k);
  out.contraction.assign(s.contraction.begin() + static_cast<std::ptrdiff_t>(first),
                         s.contraction.begin() + static_cast<std::ptrdiff_t>(first + count));
  out.lie_derivative.assign(s.lie_derivative.begin() + static_cast<std::ptrdiff_t>(first),
                            s.lie_derivative.begin() + static_cast<std::ptrdiff_t>(first + count));
  return out;
}

GStarStructure restrict_to_basic(const GStarStructure& s, std::size_t h_dim) {
  const std::size_t k_dim = s.lie.dim - h_dim;
  const GStarStructure h_part = restrict_lie(s, 0, h_dim);
  const BasicSubcomplex basic = basic_subcomplex(h_part);
  const GStarStructure k_part = restrict_lie(s, h_dim, k_dim);
  GStarStructure out = empty_structure(k_part.lie, basic.complex.space.dims);
  out.truncated = s.truncated;
  const int top = out.top();
  for (int n = 0; n <= top; ++n) out.d[static_cast<std::size_t>(n)] = basic.complex.differential(n);
  for (std::size_t j = 0; j < k_dim; ++j)
    for (int n = 0; n <= top; ++n) {
      const Matrix& emb = basic.inclusion[static_cast<std::size_t>(n)];
      auto restrict_op = [&](const Matrix& op, int target, Matrix& dst) {
        if (target < 0) return;
        const Matrix& temb = basic.inclusion[static_cast<std::size_t>(target)];
        std::vector<Vector> cols;
        for (std::size_t c = 0; c < temb.cols(); ++c) cols.push_back(temb.column(c));
        const CoordinateSystem coords(temb.rows(), {}, cols);
        for (std::size_t c = 0; c < emb.cols(); ++c) {
          const auto v = coords.coordinates(op * emb.column(c));
          if (!v) throw std::logic_error("k-operators do not preserve h-basic elements");
          set_column(dst, c, *v);
        }
      };
      restrict_op(k_part.i_at(j, n), n - 1, out.contraction[j][static_cast<std::size_t>(n)]);
      restrict_op(k_part.l_at(j, n), n, out.lie_derivative[j][static_cast<std::size_t>(n)]);
    }
  out.check_shapes();
  return out;
}

// ---------------------------------------------------------------------------
// Weil model

GradedDims weil_model_cohomology(const GStarStructure& s, int max_degree) {
  const int built = max_degree + 2;
  GStarStructure w = weil_algebra(s.lie, built);
  w.products.reset();
  GStarStructure a = s;
  a.products.reset();
  const auto t = tensor_gstar(w, a, built);
  const auto basic = basic_subcomplex(t.structure);
  GradedDims out;
  out.dims = cohomology_dims(basic.complex);
  out.dims.resize(static_cast<std::size_t>(max_degree) + 1, 0);
  out.stable_through = std::min(t.structure.stable_through(), max_degree);
  if (s.truncated) out.stable_through = std::min(out.stable_through, s.stable_through());
  return out;
}

}  // namespace foliacoh
