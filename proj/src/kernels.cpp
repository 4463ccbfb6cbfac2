// Verification kernels: OpenMP over an integer-scaled copy of the constant
// table, next to plain rational reference versions used by the tests.

#include "e8/graded_algebra.hpp"
#include "e8/rank.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <random>

namespace e8 {

void set_threads(int n) {
    static const int runtime_default = omp_get_max_threads();
    omp_set_num_threads(n > 0 ? n : runtime_default);
}

int max_threads() { return omp_get_max_threads(); }

ScaledTensor scale_to_integers(const GradedAlgebra& a) {
    int n = a.dim();
    mpz_class den = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (const auto& [k, c] : a.row(i, j)) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    // Products of two entries are summed in 128 bits; entries are capped at
    // 2^48 so that no realistic sum can overflow, and the denominator squared
    // has to fit in 64 bits for the residual conversion.
    if (!fits_int64(den * den)) throw AlgebraError("constant denominators too large for the integer kernel");
    ScaledTensor t;
    t.dim = n;
    t.denominator = to_int64(den);
    t.offset.reserve(static_cast<size_t>(n) * static_cast<size_t>(n) + 1);
    t.offset.push_back(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (const auto& [k, c] : a.row(i, j)) {
                mpz_class v = c.get_num() * (den / c.get_den());
                if (abs(v) >= (mpz_class(1) << 48)) throw AlgebraError("scaled constant too large for the integer kernel");
                t.index.push_back(k);
                t.value.push_back(to_int64(v));
            }
            t.offset.push_back(static_cast<std::uint32_t>(t.index.size()));
        }
    return t;
}

namespace {

mpz_class from_int128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

class Accumulator {
public:
    explicit Accumulator(int n) : acc_(static_cast<size_t>(n), 0), mark_(static_cast<size_t>(n), 0) {}

    void add(int m, __int128 v) {
        if (!mark_[static_cast<size_t>(m)]) {
            mark_[static_cast<size_t>(m)] = 1;
            touched_.push_back(m);
        }
        acc_[static_cast<size_t>(m)] += v;
    }

    // Clears the accumulator; returns whether anything nonzero was left in it
    // and, if asked, the residual divided by the given denominator.
    bool drain(Element* residual, std::int64_t den2) {
        bool nonzero = false;
        for (int m : touched_) {
            __int128 v = acc_[static_cast<size_t>(m)];
            if (v != 0) {
                nonzero = true;
                if (residual) {
                    Scalar s(from_int128(v), mpz_class(den2));
                    s.canonicalize();
                    residual->emplace(m, s);
                }
            }
            acc_[static_cast<size_t>(m)] = 0;
            mark_[static_cast<size_t>(m)] = 0;
        }
        touched_.clear();
        return nonzero;
    }

private:
    std::vector<__int128> acc_;
    std::vector<char> mark_;
    std::vector<int> touched_;
};

// [[b_a, b_b], b_c] added into acc.
inline void nested(const ScaledTensor& t, int a, int b, int c, Accumulator& acc) {
    size_t n = static_cast<size_t>(t.dim);
    size_t ab = static_cast<size_t>(a) * n + static_cast<size_t>(b);
    for (std::uint32_t p = t.offset[ab]; p < t.offset[ab + 1]; ++p) {
        size_t lc = static_cast<size_t>(t.index[p]) * n + static_cast<size_t>(c);
        __int128 v = t.value[p];
        for (std::uint32_t q = t.offset[lc]; q < t.offset[lc + 1]; ++q) acc.add(t.index[q], v * t.value[q]);
    }
}

bool jacobi_nonzero(const ScaledTensor& t, int i, int j, int k, Accumulator& acc, Element* residual) {
    nested(t, i, j, k, acc);
    nested(t, j, k, i, acc);
    nested(t, k, i, j, acc);
    return acc.drain(residual, t.denominator * t.denominator);
}

bool triple_less(const JacobiFailure& x, const JacobiFailure& y) {
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
}

void finish(JacobiReport& r, std::size_t max_failures) {
    std::sort(r.failures.begin(), r.failures.end(), triple_less);
    r.failures.erase(std::unique(r.failures.begin(), r.failures.end(),
                                 [](const JacobiFailure& x, const JacobiFailure& y) {
                                     return x.i == y.i && x.j == y.j && x.k == y.k;
                                 }),
                     r.failures.end());
    if (r.failures.size() > max_failures) r.failures.resize(max_failures);
    r.passed = r.failure_count == 0;
}

int uniform(std::mt19937_64& rng, int lo, int hi) {  // inclusive range
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

std::vector<std::array<int, 3>> sample_triples(const GradedAlgebra& a, const JacobiOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    int n = a.dim();
    Group g = a.group();
    std::vector<std::array<int, 3>> out;
    out.reserve(opt.samples);
    auto pick_in = [&](int comp) {
        const Component& c = a.components[static_cast<size_t>(comp)];
        return uniform(rng, c.start, c.end - 1);
    };
    for (std::uint64_t s = 0; s < opt.samples; ++s) {
        std::array<int, 3> t{};
        if (opt.focus.empty()) {
            t = {uniform(rng, 0, n - 1), uniform(rng, 0, n - 1), uniform(rng, 0, n - 1)};
        } else {
            auto [p, q] = opt.focus[static_cast<size_t>(uniform(rng, 0, static_cast<int>(opt.focus.size()) - 1))];
            if (uniform(rng, 0, 1) == 0) {
                // The focused pair bracketed directly.
                t = {pick_in(p), pick_in(q), uniform(rng, 0, n - 1)};
            } else {
                // An inner bracket landing in p, then bracketed against q.
                int i = uniform(rng, 0, n - 1);
                const GroupElement& gi = a.components[static_cast<size_t>(a.component_of[static_cast<size_t>(i)])].degree;
                GroupElement rest = g.add(a.components[static_cast<size_t>(p)].degree, g.neg(gi));
                t = {i, pick_in(a.component_index(rest)), pick_in(q)};
            }
        }
        std::sort(t.begin(), t.end());
        out.push_back(t);
    }
    return out;
}

JacobiReport verify_jacobi(const GradedAlgebra& a, const JacobiOptions& opt) {
    ScaledTensor t = scale_to_integers(a);
    int n = a.dim();
    JacobiReport report;
    std::uint64_t checked = 0, failed = 0;
    std::vector<std::array<int, 3>> samples;
    if (opt.mode == JacobiMode::Sampled) samples = sample_triples(a, opt);

#pragma omp parallel reduction(+ : checked, failed)
    {
        Accumulator acc(n);
        std::vector<JacobiFailure> local;
        // Exhaustive order is increasing per thread, so each thread's first
        // max_failures hits contain the global first ones; sampled hits are
        // all kept so that the report does not depend on the thread count.
        bool keep_all = opt.mode == JacobiMode::Sampled;
        auto visit = [&](int i, int j, int k) {
            ++checked;
            if (jacobi_nonzero(t, i, j, k, acc, nullptr)) {
                ++failed;
                if (keep_all || local.size() < opt.max_failures) local.push_back({i, j, k, {}});
            }
        };
        if (opt.mode == JacobiMode::Exhaustive) {
#pragma omp for schedule(dynamic, 1)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (int k = j; k < n; ++k) visit(i, j, k);
        } else {
            std::int64_t m = static_cast<std::int64_t>(samples.size());
#pragma omp for schedule(static)
            for (std::int64_t s = 0; s < m; ++s) {
                const auto& tr = samples[static_cast<size_t>(s)];
                visit(tr[0], tr[1], tr[2]);
            }
        }
#pragma omp critical(e8_jacobi_merge)
        for (auto& f : local) report.failures.push_back(std::move(f));
    }
    report.triples_checked = checked;
    report.failure_count = failed;
    finish(report, opt.max_failures);
    for (auto& f : report.failures) f.residual = jacobi(a, f.i, f.j, f.k);
    return report;
}

Element jacobi(const GradedAlgebra& a, int i, int j, int k) {
    Element out;
    auto nested_ref = [&](int x, int y, int z) {
        for (const auto& [l, c] : a.row(x, y))
            for (const auto& [m, d] : a.row(l, z)) add_to(out, m, c * d);
    };
    nested_ref(i, j, k);
    nested_ref(j, k, i);
    nested_ref(k, i, j);
    return out;
}

JacobiReport verify_jacobi_reference(const GradedAlgebra& a, const JacobiOptions& opt) {
    JacobiReport report;
    auto visit = [&](int i, int j, int k) {
        ++report.triples_checked;
        Element r = jacobi(a, i, j, k);
        if (r.empty()) return;
        ++report.failure_count;
        bool keep = opt.mode == JacobiMode::Sampled || report.failures.size() < opt.max_failures;
        if (keep) report.failures.push_back({i, j, k, std::move(r)});
    };
    int n = a.dim();
    if (opt.mode == JacobiMode::Exhaustive) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k) visit(i, j, k);
    } else {
        for (const auto& tr : sample_triples(a, opt)) visit(tr[0], tr[1], tr[2]);
    }
    finish(report, opt.max_failures);
    return report;
}

// ----------------------------------------------------------------- grading

GradingReport verify_grading(const GradedAlgebra& a) {
    Group g = a.group();
    int c = static_cast<int>(a.components.size());
    std::vector<std::pair<int, int>> todo;
    for (int p = 0; p < c; ++p)
        for (int q = p; q < c; ++q) todo.emplace_back(p, q);
    std::vector<PairReport> done(todo.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t w = 0; w < static_cast<std::int64_t>(todo.size()); ++w) {
        auto [p, q] = todo[static_cast<size_t>(w)];
        const Component& cp = a.components[static_cast<size_t>(p)];
        const Component& cq = a.components[static_cast<size_t>(q)];
        int target = a.component_index(g.add(cp.degree, cq.degree));
        PairReport r{p, q, target, true, 0, 0, target != 0};
        const Component& ct = a.components[static_cast<size_t>(target)];
        r.target_dim = ct.dim();
        Echelon e;
        for (int i = cp.start; i < cp.end; ++i)
            for (int j = cq.start; j < cq.end; ++j) {
                const auto& row = a.row(i, j);
                if (row.empty()) continue;
                for (const auto& [k, v] : row)
                    if (k < ct.start || k >= ct.end) r.closed = false;
                if (e.rank() < r.target_dim) e.insert(Element(row.begin(), row.end()));
            }
        r.rank = e.rank();
        done[static_cast<size_t>(w)] = r;
    }

    GradingReport rep;
    for (const PairReport& r : done) {
        rep.pairs.push_back(r);
        if (r.left != r.right) rep.pairs.push_back(PairReport{r.right, r.left, r.target, r.closed, r.rank, r.target_dim, r.required});
    }
    std::sort(rep.pairs.begin(), rep.pairs.end(),
              [](const PairReport& x, const PairReport& y) { return std::tie(x.left, x.right) < std::tie(y.left, y.right); });
    for (const PairReport& r : rep.pairs) {
        rep.closure = rep.closure && r.closed;
        if (r.required) rep.fullness = rep.fullness && r.full();
    }
    return rep;
}

// ----------------------------------------------------------------- killing

namespace {

Scalar coeff_in(const std::vector<Term>& row, int k) {
    auto it = std::lower_bound(row.begin(), row.end(), k, [](const Term& t, int key) { return t.first < key; });
    return (it != row.end() && it->first == k) ? it->second : Scalar(0);
}

Scalar killing_entry(const GradedAlgebra& a, int i, int j) {
    Scalar s = 0;
    for (int k = 0; k < a.dim(); ++k)
        for (const auto& [l, c] : a.row(i, k)) {
            Scalar d = coeff_in(a.row(j, l), k);
            if (!is_zero(d)) s += c * d;
        }
    return s;
}

}  // namespace

Scalar killing(const GradedAlgebra& a, const Element& x, const Element& y) {
    Scalar s = 0;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) s += ci * cj * killing_entry(a, i, j);
    return s;
}

std::vector<Scalar> killing_matrix_reference(const GradedAlgebra& a) {
    int n = a.dim();
    std::vector<Scalar> m(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i * n + j)] = killing_entry(a, i, j);
    return m;
}

std::vector<Scalar> killing_matrix(const GradedAlgebra& a) {
    ScaledTensor t = scale_to_integers(a);
    int n = a.dim();
    size_t nn = static_cast<size_t>(n);
    std::vector<__int128> raw(nn * nn, 0);

#pragma omp parallel
    {
        // ad_i as a dense matrix: adi[l * n + k] = c_{ik}^l.
        std::vector<std::int64_t> adi(nn * nn, 0);
#pragma omp for schedule(dynamic, 1)
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                size_t ik = static_cast<size_t>(i) * nn + static_cast<size_t>(k);
                for (std::uint32_t p = t.offset[ik]; p < t.offset[ik + 1]; ++p)
                    adi[static_cast<size_t>(t.index[p]) * nn + static_cast<size_t>(k)] = t.value[p];
            }
            for (int j = i; j < n; ++j) {
                __int128 s = 0;
                for (int l = 0; l < n; ++l) {
                    size_t jl = static_cast<size_t>(j) * nn + static_cast<size_t>(l);
                    for (std::uint32_t q = t.offset[jl]; q < t.offset[jl + 1]; ++q)
                        s += static_cast<__int128>(t.value[q]) * adi[static_cast<size_t>(l) * nn + static_cast<size_t>(t.index[q])];
                }
                raw[static_cast<size_t>(i) * nn + static_cast<size_t>(j)] = s;
                raw[static_cast<size_t>(j) * nn + static_cast<size_t>(i)] = s;
            }
            for (int k = 0; k < n; ++k) {
                size_t ik = static_cast<size_t>(i) * nn + static_cast<size_t>(k);
                for (std::uint32_t p = t.offset[ik]; p < t.offset[ik + 1]; ++p)
                    adi[static_cast<size_t>(t.index[p]) * nn + static_cast<size_t>(k)] = 0;
            }
        }
    }

    mpz_class den2 = mpz_class(t.denominator) * t.denominator;
    std::vector<Scalar> m(nn * nn);
    for (size_t p = 0; p < nn * nn; ++p) {
        if (raw[p] == 0) continue;
        m[p] = Scalar(from_int128(raw[p]), den2);
        m[p].canonicalize();
    }
    return m;
}

int killing_rank(const GradedAlgebra& a) {
    int n = a.dim();
    std::vector<Scalar> m = killing_matrix(a);
    Echelon e;
    for (int i = 0; i < n; ++i) {
        Element row;
        for (int j = 0; j < n; ++j)
            if (!is_zero(m[static_cast<size_t>(i * n + j)])) row.emplace(j, m[static_cast<size_t>(i * n + j)]);
        e.insert(row);
    }
    return e.rank();
}

KillingReport check_killing(const GradedAlgebra& a, std::uint64_t samples, std::uint64_t seed) {
    int n = a.dim();
    std::vector<Scalar> m = killing_matrix(a);
    auto K = [&](int i, int j) -> const Scalar& { return m[static_cast<size_t>(i * n + j)]; };
    KillingReport rep;
    for (int i = 0; i < n && rep.symmetric; ++i)
        for (int j = i + 1; j < n; ++j)
            if (K(i, j) != K(j, i)) {
                rep.symmetric = false;
                break;
            }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::uint64_t t = 0; t < samples; ++t) {
        int x = pick(rng), y = pick(rng), z = pick(rng);
        Scalar lhs = 0, rhs = 0;
        for (const auto& [k, c] : a.row(x, y)) lhs += c * K(k, z);
        for (const auto& [k, c] : a.row(y, z)) rhs += c * K(x, k);
        ++rep.triples_checked;
        if (lhs != rhs) rep.invariant = false;
    }
    Echelon e;
    for (int i = 0; i < n; ++i) {
        Element row;
        for (int j = 0; j < n; ++j)
            if (!is_zero(K(i, j))) row.emplace(j, K(i, j));
        e.insert(row);
    }
    rep.rank = e.rank();
    return rep;
}

// ------------------------------------------------------------------ ideals

int ideal_closure(const GradedAlgebra& a, const std::vector<Element>& seeds) {
    int n = a.dim();
    Echelon e;
    std::deque<Element> queue;
    bool any = false;
    for (const Element& s : seeds) {
        if (s.empty()) continue;
        any = true;
        if (e.insert(s)) queue.push_back(s);
    }
    if (!any) throw AlgebraError("ideal closure needs a nonzero seed");
    while (!queue.empty() && e.rank() < n) {
        Element v = std::move(queue.front());
        queue.pop_front();
        for (int k = 0; k < n && e.rank() < n; ++k) {
            Element w;
            for (const auto& [i, c] : v)
                for (const auto& [m, d] : a.row(i, k)) add_to(w, m, c * d);
            if (!w.empty() && e.insert(w)) queue.push_back(std::move(w));
        }
    }
    return e.rank();
}

int ideal_closure(const GradedAlgebra& a, const Element& seed) {
    return ideal_closure(a, std::vector<Element>{seed});
}

std::vector<int> ideal_closure_of_basis(const GradedAlgebra& a) {
    int n = a.dim();
    std::vector<int> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = ideal_closure(a, basis_element(i));
    return out;
}

}  // namespace e8
