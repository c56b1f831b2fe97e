#include "zhat/zhat.hpp"
#include "zhat/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

namespace zhat {

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Degree K+2 vertex in chamber coordinates (P, S >= 0).
std::int64_t high_coefficient(int K, int alpha, std::int64_t P, std::int64_t S)
{
    std::int64_t acc = 0;
    const std::int64_t lo = std::max<std::int64_t>(0, std::max(P, S) - K);
    for (std::int64_t r = lo; r <= std::min(P, S); ++r)
        acc += binomial(K, P - r) * binomial(K, S - r) * binomial(r + K - 1, K - 1);
    if ((P + S) % 2 != 0)
        acc = -acc;
    if (alpha < 0 && K % 2 != 0)
        acc = -acc;
    return acc;
}

} // namespace

BigInt vertex_coefficient(const VertexFactorSpec& spec, std::int64_t p, std::int64_t s)
{
    if (spec.degree == 2)
        throw Error(ErrorKind::domain, "degree-2 vertices carry the trivial factor");
    if (spec.degree < 1)
        throw Error(ErrorKind::unsupported, "isolated vertex has no chamber expansion");
    if (spec.alpha != 1 && spec.alpha != -1)
        throw Error(ErrorKind::domain, "chamber sign must be +1 or -1");
    const std::int64_t P = spec.alpha * p;
    const std::int64_t S = -spec.alpha * s;
    if (P < 0 || S < 0)
        return 0;
    if (spec.degree == 1)
        return (P == 0 || S == 0) ? BigInt(spec.alpha) : BigInt(0);
    return BigInt(high_coefficient(spec.degree - 2, spec.alpha, P, S));
}

namespace {

struct HighState {
    std::int64_t P, S;
    std::int64_t coefficient;
};

// One leaf variable of a cell: type 1 moves P, type 2 moves S.
struct CellVar {
    int leaf;
    int type;
    std::int64_t base;
};

struct PointSink {
    std::map<std::int64_t, std::int64_t> positive; // det * exponent -> coefficient
    std::vector<std::int64_t> levels;              // zero-exponent profile
    const std::function<void(const LatticeContribution&)>* stream = nullptr;
};

class Problem {
public:
    Problem(const MatrixZ& B, const MatrixQ& Binv, const std::vector<int>& degrees, const Chamber& chamber,
            const VectorZ& a, const VectorZ& b)
    {
        L_ = static_cast<int>(B.rows());
        if (static_cast<int>(degrees.size()) != L_)
            throw Error(ErrorKind::domain, "degree vector does not match the matrix");
        BigInt det = determinant(B);
        if (det == 0)
            throw Error(ErrorKind::positive_betti, "det B = 0");
        if (!is_good_chamber(Binv, degrees, chamber))
            throw Error(ErrorKind::no_chamber, "chamber " + chamber.to_string() + " is not good");
        // |det| B^{-1}, so exponents are E / det_ with det_ > 0
        det_ = to_int64(abs(det));
        adj_ = MatrixL(L_, L_);
        for (int i = 0; i < L_; ++i)
            for (int j = 0; j < L_; ++j) {
                Rational v = Binv(i, j) * Rational(det_);
                if (!is_integer(v))
                    throw Error(ErrorKind::domain, "inverse does not match the matrix");
                adj_(i, j) = to_int64(num(v));
            }
        alpha_.assign(L_, 0);
        K_.assign(L_, 0);
        for (int I = 0; I < L_; ++I) {
            if (degrees[I] == 2)
                continue;
            if (degrees[I] == 0)
                throw Error(ErrorKind::unsupported, "isolated vertex");
            alpha_[I] = chamber.sign_at(I);
            if (degrees[I] == 1)
                leaves_.push_back(I);
            else {
                high_.push_back(I);
                K_[I] = degrees[I] - 2;
            }
        }
        Xd_ = MatrixL::Zero(L_, L_);
        for (int I = 0; I < L_; ++I)
            for (int J = 0; J < L_; ++J)
                Xd_(I, J) = alpha_[I] * alpha_[J] * adj_(I, J);
        ta_ = residues(a);
        tb_ = residues(b);
    }

    std::int64_t det() const { return det_; }
    int leaf_count() const { return static_cast<int>(leaves_.size()); }
    int high_offset() const
    {
        int s = 0;
        for (int h : high_)
            s += K_[h];
        return 2 * s;
    }

    // Candidate high-vertex states with 2 P^T Xd S <= bound.
    std::vector<std::vector<HighState>> high_assignments(std::int64_t bound) const
    {
        const int k = static_cast<int>(high_.size());
        Eigen::MatrixXd X(k, k);
        std::int64_t sumK2 = 0;
        for (int i = 0; i < k; ++i) {
            sumK2 += static_cast<std::int64_t>(K_[high_[i]]) * K_[high_[i]];
            for (int j = 0; j < k; ++j)
                X(i, j) = static_cast<double>(Xd_(high_[i], high_[j]));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
        const double lmin = es.eigenvalues().minCoeff();
        const double lmax = es.eigenvalues().maxCoeff();
        if (!(lmin > 0))
            throw Error(ErrorKind::divergence, "chamber form on high-degree vertices is not positive definite");
        const double rhs = 2.0 * static_cast<double>(std::max<std::int64_t>(bound, 0)) + lmax * sumK2;
        const auto Tb = static_cast<std::int64_t>(std::floor(std::sqrt(rhs / lmin) * (1 + 1e-9) + 1e-9)) + 1;

        std::vector<std::vector<HighState>> per_vertex(k);
        for (int i = 0; i < k; ++i) {
            const int K = K_[high_[i]];
            for (std::int64_t P = 0; P <= Tb; ++P)
                for (std::int64_t S = std::max<std::int64_t>(0, P - K); S <= std::min(P + K, Tb - P); ++S) {
                    std::int64_t c = high_coefficient(K, alpha_[high_[i]], P, S);
                    if (c != 0)
                        per_vertex[i].push_back({P, S, c});
                }
        }
        std::vector<std::vector<HighState>> out;
        std::vector<HighState> cur(k);
        std::function<void(int)> rec = [&](int i) {
            if (i == k) {
                if (high_energy(cur) <= std::max<std::int64_t>(bound, 0))
                    out.push_back(cur);
                return;
            }
            for (const auto& st : per_vertex[i]) {
                cur[i] = st;
                rec(i + 1);
            }
        };
        rec(0);
        return out;
    }

    // Visit all points of one (high state, leaf pattern) cell.
    // Positive exponents up to bound go to sink.positive (or the stream);
    // exponent-zero cells feed sink.levels up to its size.
    void visit_cell(const std::vector<HighState>& hs, const std::vector<int>& pattern, std::int64_t bound,
                    bool want_positive, bool want_levels, PointSink& sink) const
    {
        const std::int64_t Eh = high_energy(hs);
        std::vector<CellVar> vars;
        bool anyP = false, anyS = false;
        for (std::size_t k = 0; k < leaves_.size(); ++k) {
            if (pattern[k] == 0)
                continue;
            const int i = leaves_[k];
            std::int64_t base = 0;
            for (std::size_t h = 0; h < high_.size(); ++h) {
                const int H = high_[h];
                base += pattern[k] == 1 ? Xd_(i, H) * hs[h].S : hs[h].P * Xd_(H, i);
            }
            vars.push_back({i, pattern[k], 2 * base});
            (pattern[k] == 1 ? anyP : anyS) = true;
        }
        int free_vars = 0;
        for (const auto& v : vars)
            if (v.base == 0 && !(v.type == 1 ? anyS : anyP))
                ++free_vars;

        std::vector<std::int64_t> vals(vars.size(), 1);
        if (free_vars > 0) {
            if (free_vars == static_cast<int>(vars.size()) && Eh == 0) {
                if (want_levels)
                    zero_cell(hs, vars, sink);
                return;
            }
            if (energy(Eh, vars, vals) <= bound)
                throw Error(ErrorKind::divergence,
                            "infinitely many lattice points at a fixed exponent (unbounded chamber cell)");
            return;
        }
        if (vars.empty()) {
            if (Eh == 0) {
                if (want_levels)
                    zero_cell(hs, vars, sink);
            } else if (want_positive && Eh <= bound) {
                emit(hs, vars, vals, Eh, sink);
            }
            return;
        }
        if (!want_positive)
            return;
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == vars.size()) {
                emit(hs, vars, vals, energy(Eh, vars, vals), sink);
                return;
            }
            for (std::int64_t t = 1;; ++t) {
                vals[k] = t;
                if (energy(Eh, vars, vals) > bound)
                    break;
                rec(k + 1);
            }
            vals[k] = 1;
        };
        rec(0);
    }

private:
    int L_ = 0;
    std::int64_t det_ = 1;
    MatrixL adj_, Xd_;
    std::vector<int> high_, leaves_, alpha_, K_;
    VectorL ta_, tb_;

    VectorL residues(const VectorZ& v) const
    {
        if (v.size() != L_)
            throw Error(ErrorKind::domain, "label vector has the wrong length");
        VectorL out(L_);
        for (int r = 0; r < L_; ++r) {
            BigInt acc = 0;
            for (int c = 0; c < L_; ++c)
                acc += BigInt(adj_(r, c)) * v(c);
            out(r) = to_int64(pos_mod(acc, BigInt(det_)));
        }
        return out;
    }

    std::int64_t high_energy(const std::vector<HighState>& hs) const
    {
        std::int64_t e = 0;
        for (std::size_t g = 0; g < high_.size(); ++g)
            for (std::size_t h = 0; h < high_.size(); ++h)
                e += hs[g].P * Xd_(high_[g], high_[h]) * hs[h].S;
        return 2 * e;
    }

    std::int64_t energy(std::int64_t Eh, const std::vector<CellVar>& vars, const std::vector<std::int64_t>& vals) const
    {
        std::int64_t e = Eh;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            e += vars[k].base * vals[k];
            if (vars[k].type != 1)
                continue;
            for (std::size_t j = 0; j < vars.size(); ++j)
                if (vars[j].type == 2)
                    e += 2 * Xd_(vars[k].leaf, vars[j].leaf) * vals[k] * vals[j];
        }
        return e;
    }

    // n_I = -alpha_I P_I, m_I = alpha_I S_I
    void build(const std::vector<HighState>& hs, const std::vector<CellVar>& vars,
               const std::vector<std::int64_t>& vals, VectorL& n, VectorL& m) const
    {
        n = VectorL::Zero(L_);
        m = VectorL::Zero(L_);
        for (std::size_t h = 0; h < high_.size(); ++h) {
            n(high_[h]) = -alpha_[high_[h]] * hs[h].P;
            m(high_[h]) = alpha_[high_[h]] * hs[h].S;
        }
        for (std::size_t k = 0; k < vars.size(); ++k) {
            const int i = vars[k].leaf;
            if (vars[k].type == 1)
                n(i) = -alpha_[i] * vals[k];
            else
                m(i) = alpha_[i] * vals[k];
        }
    }

    bool in_class(const VectorL& v, const VectorL& target) const
    {
        if (det_ == 1)
            return true;
        for (int r = 0; r < L_; ++r) {
            std::int64_t acc = 0;
            for (int c = 0; c < L_; ++c)
                acc += adj_(r, c) * v(c);
            if (pos_mod(acc, det_) != target(r))
                return false;
        }
        return true;
    }

    std::int64_t coefficient(const std::vector<HighState>& hs) const
    {
        std::int64_t c = 1;
        for (const auto& h : hs)
            c *= h.coefficient;
        for (int i : leaves_)
            c *= alpha_[i];
        return c;
    }

    void emit(const std::vector<HighState>& hs, const std::vector<CellVar>& vars,
              const std::vector<std::int64_t>& vals, std::int64_t E, PointSink& sink) const
    {
        VectorL n, m;
        build(hs, vars, vals, n, m);
        if (!in_class(n, ta_) || !in_class(m, tb_))
            return;
        const std::int64_t c = coefficient(hs);
        if (sink.stream) {
            LatticeContribution lc{n, m, Rational(E, det_), BigInt(c)};
            (*sink.stream)(lc);
        } else {
            sink.positive[E] += c;
        }
    }

    void zero_cell(const std::vector<HighState>& hs, const std::vector<CellVar>& vars, PointSink& sink) const
    {
        const auto Tmax = static_cast<std::int64_t>(sink.levels.size()) - 1;
        std::int64_t T0 = 0;
        for (const auto& h : hs)
            T0 += h.P + h.S;
        std::vector<std::int64_t> vals(vars.size(), 1);
        const std::int64_t c = coefficient(hs);
        std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t T) {
            if (k == vars.size()) {
                VectorL n, m;
                build(hs, vars, vals, n, m);
                if (in_class(n, ta_) && in_class(m, tb_))
                    sink.levels[T] += c;
                return;
            }
            // remaining variables need at least 1 each
            const auto rest = static_cast<std::int64_t>(vars.size() - k - 1);
            for (std::int64_t t = 1; T + t + rest <= Tmax; ++t) {
                vals[k] = t;
                rec(k + 1, T + t);
            }
        };
        if (T0 + static_cast<std::int64_t>(vars.size()) <= Tmax)
            rec(0, T0);
    }
};

std::vector<std::vector<int>> leaf_patterns(int nleaves)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(nleaves, 0);
    for (;;) {
        out.push_back(cur);
        int k = nleaves - 1;
        while (k >= 0 && cur[k] == 2)
            cur[k--] = 0;
        if (k < 0)
            break;
        ++cur[k];
    }
    return out;
}

std::int64_t scaled_bound(const Rational& N, std::int64_t det)
{
    if (N < 0)
        throw Error(ErrorKind::domain, "truncation order must be nonnegative");
    return to_int64(num(floor(N * Rational(det))));
}

struct Task {
    std::size_t high;
    std::size_t pattern;
};

// Runs all cells over `workers` threads and merges deterministically.
PointSink run_cells(const Problem& pb, std::int64_t bound, bool want_positive, int max_level, int workers)
{
    const auto highs = pb.high_assignments(bound);
    const auto patterns = leaf_patterns(pb.leaf_count());
    std::vector<Task> tasks;
    for (std::size_t h = 0; h < highs.size(); ++h)
        for (std::size_t p = 0; p < patterns.size(); ++p)
            tasks.push_back({h, p});

    workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
    std::vector<PointSink> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](int w) {
        try {
            partial[w].levels.assign(max_level + 1, 0);
            for (std::size_t t = w; t < tasks.size(); t += workers)
                pb.visit_cell(highs[tasks[t].high], patterns[tasks[t].pattern], bound, want_positive,
                              max_level >= 0, partial[w]);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    PointSink total;
    total.levels.assign(max_level + 1, 0);
    for (const auto& part : partial) {
        for (const auto& [e, c] : part.positive)
            total.positive[e] += c;
        for (std::size_t T = 0; T < part.levels.size(); ++T)
            total.levels[T] += part.levels[T];
    }
    return total;
}

int default_max_level(const Problem& pb)
{
    return pb.high_offset() + 4 + static_cast<int>(pb.det()) * (2 * pb.leaf_count() + 8);
}

} // namespace

void enumerate_contributions(const MatrixZ& B, const MatrixQ& Binv, const std::vector<int>& degrees,
                             const Chamber& chamber, const VectorZ& a, const VectorZ& b, const Rational& N,
                             const std::function<void(const LatticeContribution&)>& sink)
{
    Problem pb(B, Binv, degrees, chamber, a, b);
    const std::int64_t bound = scaled_bound(N, pb.det());
    PointSink ps;
    ps.stream = &sink;
    const auto patterns = leaf_patterns(pb.leaf_count());
    for (const auto& hs : pb.high_assignments(bound))
        for (const auto& pat : patterns)
            pb.visit_cell(hs, pat, bound, true, false, ps);
}

ZeroExponentProfile zero_exponent_profile(const MatrixZ& B, const MatrixQ& Binv, const std::vector<int>& degrees,
                                          const Chamber& chamber, const VectorZ& a, const VectorZ& b,
                                          int max_level)
{
    Problem pb(B, Binv, degrees, chamber, a, b);
    if (max_level < 0)
        max_level = default_max_level(pb);
    PointSink ps = run_cells(pb, 0, false, max_level, 1);
    ZeroExponentProfile prof;
    for (auto v : ps.levels)
        prof.levels.push_back(BigInt(v));
    prof.modulus = pb.det();
    prof.max_degree = pb.leaf_count();
    return prof;
}

namespace {

// Coefficients c_j of the polynomial through (u_i, y_i).
std::vector<Rational> interpolate(const std::vector<Rational>& u, const std::vector<Rational>& y)
{
    const auto n = static_cast<Eigen::Index>(u.size());
    MatrixQ A(n, n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        Rational p(1);
        for (Eigen::Index j = 0; j < n; ++j) {
            A(i, j) = p;
            p *= u[i];
        }
        A(i, n) = y[i];
    }
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (A(p, c) == 0)
            ++p;
        if (p != c)
            A.row(c).swap(A.row(p));
        Rational piv = A(c, c);
        for (Eigen::Index j = c; j <= n; ++j)
            A(c, j) /= piv;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || A(r, c) == 0)
                continue;
            Rational f = A(r, c);
            for (Eigen::Index j = c; j <= n; ++j)
                A(r, j) -= f * A(c, j);
        }
    }
    std::vector<Rational> coef(n);
    for (Eigen::Index i = 0; i < n; ++i)
        coef[i] = A(i, n);
    return coef;
}

Rational evaluate(const std::vector<Rational>& c, const Rational& u)
{
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * u + *it;
    return acc;
}

constexpr int kCheckPoints = 4;

} // namespace

ZetaCombo regularize_constant(const ZeroExponentProfile& profile)
{
    ZetaCombo out;
    const auto& f = profile.levels;
    if (f.empty())
        return out;
    bool all_zero = std::all_of(f.begin(), f.end(), [](const BigInt& v) { return v == 0; });
    if (all_zero)
        return out;
    const auto Tmax = static_cast<std::int64_t>(f.size()) - 1;
    const int fit = profile.max_degree + 1;

    for (std::int64_t d = 1; d <= std::max<std::int64_t>(1, profile.modulus); ++d) {
        if (profile.modulus % d != 0)
            continue;
        ZetaCombo combo;
        combo.add_rational(Rational(f[0]));
        bool ok = true;
        for (std::int64_t r = 1; r <= d && ok; ++r) {
            std::vector<std::int64_t> Ts;
            for (std::int64_t T = r; T <= Tmax; T += d)
                Ts.push_back(T);
            if (static_cast<int>(Ts.size()) < fit + kCheckPoints) {
                ok = false;
                break;
            }
            std::vector<Rational> u, y;
            for (std::size_t i = Ts.size() - fit; i < Ts.size(); ++i) {
                u.push_back(Rational(Ts[i], d));
                y.push_back(Rational(f[Ts[i]]));
            }
            auto c = interpolate(u, y);
            // last disagreement must leave kCheckPoints verified points
            std::int64_t last_bad = -1;
            for (std::size_t i = 0; i < Ts.size(); ++i)
                if (evaluate(c, Rational(Ts[i], d)) != Rational(f[Ts[i]]))
                    last_bad = static_cast<std::int64_t>(i);
            if (last_bad >= static_cast<std::int64_t>(Ts.size()) - fit - kCheckPoints) {
                ok = false;
                break;
            }
            for (std::int64_t i = 0; i <= last_bad; ++i)
                combo.add_rational(Rational(f[Ts[i]]) - evaluate(c, Rational(Ts[i], d)));
            const Rational x(r, d);
            for (std::size_t j = 0; j < c.size(); ++j)
                combo.add(c[j], -static_cast<int>(j), x);
        }
        if (ok)
            return combo;
    }
    throw Error(ErrorKind::regularization,
                "exponent-zero lattice points do not form quasi-polynomial families; regularization rule inapplicable");
}

ManifoldData analyze(const PlumbingGraph& g)
{
    ManifoldData d;
    validate(g);
    d.graph = g;
    d.B = adjacency(g);
    d.det = determinant(d.B);
    d.degrees = g.degrees();
    d.snf = smith_normal_form(d.B);
    if (d.det == 0)
        return d;
    d.Binv = exact_inverse(d.B);
    d.labels = coset_representatives(d.snf, label_vertex(g));
    d.genericity = is_generic(g, d.Binv);
    d.positive_definite = is_positive_definite(d.B);
    d.chambers = find_good_chambers(d.B, d.Binv, d.degrees);
    return d;
}

void require_computable(const ManifoldData& d, bool require_positive_definite)
{
    if (d.det == 0)
        throw Error(ErrorKind::positive_betti, "det B = 0, so b1(Y) > 0");
    if (!d.genericity.is_generic) {
        std::string why = d.genericity.failed_condition == GenericityFailure::no_high_degree_vertex
                              ? "no vertex of degree > 2"
                              : "inverse entry vanishes between high-degree vertices";
        throw Error(ErrorKind::non_generic, "graph is not generic: " + why);
    }
    if (require_positive_definite && !d.positive_definite)
        throw Error(ErrorKind::not_positive_definite, "B is not positive definite");
    if (d.chambers.empty())
        throw Error(ErrorKind::no_chamber, "no good chamber exists");
}

const SpincLabel& find_label(const ManifoldData& d, const std::string& name)
{
    for (const auto& l : d.labels)
        if (l.name == name)
            return l;
    throw Error(ErrorKind::domain, "unknown label '" + name + "'");
}

QSeries compute_zhat(const ManifoldData& d, const VectorZ& a, const VectorZ& b, const Chamber& chamber,
                     const Rational& N, const ZhatOptions& options)
{
    require_computable(d, options.require_positive_definite);
    Problem pb(d.B, d.Binv, d.degrees, chamber, a, b);
    const std::int64_t bound = scaled_bound(N, pb.det());
    const int max_level = default_max_level(pb);
    PointSink ps = run_cells(pb, bound, true, max_level, options.workers);

    // c00: product of the vertex coefficients at the origin
    int c00 = 1;
    for (std::size_t I = 0; I < d.degrees.size(); ++I) {
        if (d.degrees[I] == 2)
            continue;
        const int K = d.degrees[I] - 2;
        const int s = chamber.sign_at(static_cast<int>(I));
        if (d.degrees[I] == 1 || K % 2 != 0)
            c00 *= s;
    }
    const int eps = -c00;

    QSeries out(N, abs(d.det));
    for (const auto& [E, c] : ps.positive)
        out.insert(Rational(E, pb.det()), BigInt(c) * eps);
    ZeroExponentProfile prof;
    for (auto v : ps.levels)
        prof.levels.push_back(BigInt(v));
    prof.modulus = pb.det();
    prof.max_degree = pb.leaf_count();
    out.constant = regularize_constant(prof).scaled(Rational(c00));
    out.normalize_prefactor();
    return out;
}

QSeries compute_zhat(const PlumbingGraph& g, const std::string& a, const std::string& b, const Rational& N,
                     const ZhatOptions& options)
{
    ManifoldData d = analyze(g);
    require_computable(d, options.require_positive_definite);
    return compute_zhat(d, find_label(d, a).rep, find_label(d, b).rep, d.chambers.front(), N, options);
}

} // namespace zhat

namespace zhat {

std::vector<std::pair<LabelPair, QSeries>> compute_all(const ManifoldData& d, const Chamber& chamber,
                                                       const Rational& N, const ZhatOptions& options)
{
    std::vector<std::pair<LabelPair, QSeries>> out;
    for (const auto& a : d.labels)
        for (const auto& b : d.labels)
            out.emplace_back(LabelPair{a.name, b.name}, compute_zhat(d, a.rep, b.rep, chamber, N, options));
    return out;
}

namespace {

using SeriesTable = std::map<LabelPair, QSeries>;

// Candidate label maps from the reference labels to the other graph's labels.
std::vector<std::map<std::string, std::string>> label_maps(const std::vector<SpincLabel>& ref,
                                                           const std::vector<SpincLabel>& other)
{
    std::vector<std::map<std::string, std::string>> maps;
    if (ref.size() != other.size())
        return maps;
    const auto n = static_cast<std::int64_t>(ref.size());
    auto cyclic = [&](const std::vector<SpincLabel>& ls) {
        for (std::int64_t k = 0; k < n; ++k)
            if (ls[k].name != std::to_string(k))
                return false;
        return true;
    };
    if (cyclic(ref) && cyclic(other)) {
        for (std::int64_t u = 1; u <= std::max<std::int64_t>(1, n - 1); ++u) {
            if (std::gcd(u, n) != 1 && n > 1)
                continue;
            std::map<std::string, std::string> m;
            for (std::int64_t k = 0; k < n; ++k)
                m[std::to_string(k)] = std::to_string(k * u % n);
            maps.push_back(m);
        }
        return maps;
    }
    std::vector<std::size_t> perm(other.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    do {
        if (perm.empty() || perm[0] != 0)
            continue;
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < perm.size(); ++i)
            m[ref[i].name] = other[perm[i]].name;
        maps.push_back(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return maps;
}

} // namespace

PresentationVerdict compare_presentations(const std::vector<PlumbingGraph>& graphs, const Rational& N,
                                          bool all_labels, const ZhatOptions& options)
{
    PresentationVerdict verdict;
    if (graphs.empty())
        return verdict;
    std::vector<ManifoldData> data;
    std::vector<SeriesTable> tables;
    for (const auto& g : graphs) {
        try {
            data.push_back(analyze(g));
        } catch (const Error& e) {
            throw Error(e.kind(), "presentation " + std::to_string(data.size() + 1) + ": " + e.what());
        }
        const auto& d = data.back();
        // presentations after the first may be indefinite
        ZhatOptions opts = options;
        opts.require_positive_definite = data.size() == 1 && options.require_positive_definite;
        SeriesTable t;
        try {
            require_computable(d, opts.require_positive_definite);
            if (all_labels) {
                for (auto& [k, v] : compute_all(d, d.chambers.front(), N, opts))
                    t.emplace(k, std::move(v));
            } else {
                const auto& z = find_label(d, "0");
                t.emplace(LabelPair{"0", "0"}, compute_zhat(d, z.rep, z.rep, d.chambers.front(), N, opts));
            }
        } catch (const Error& e) {
            throw Error(e.kind(), "presentation " + std::to_string(data.size()) + ": " + e.what());
        }
        tables.push_back(std::move(t));
    }
    for (std::size_t k = 1; k < graphs.size(); ++k) {
        if (data[k].labels.size() != data[0].labels.size()) {
            verdict = {false, k, std::nullopt, "first homology orders differ"};
            return verdict;
        }
        std::optional<Rational> first;
        bool matched = false;
        const auto maps = all_labels ? label_maps(data[0].labels, data[k].labels)
                                     : std::vector<std::map<std::string, std::string>>{{{"0", "0"}}};
        for (const auto& m : maps) {
            std::optional<Rational> diff;
            for (const auto& [pair, series] : tables[0]) {
                const auto& other = tables[k].at({m.at(pair.first), m.at(pair.second)});
                diff = first_difference(series, other, N);
                if (diff)
                    break;
            }
            if (!diff) {
                matched = true;
                break;
            }
            if (!first || *diff < *first)
                first = diff;
        }
        if (!matched) {
            verdict = {false, k, first, "no label matching makes the series agree"};
            return verdict;
        }
    }
    return verdict;
}

} // namespace zhat
