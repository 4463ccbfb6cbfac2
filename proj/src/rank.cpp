#include "e8/rank.hpp"

namespace e8 {

namespace {

void make_primitive(IntRow& v) {
    mpz_class g = 0;
    for (const auto& [c, x] : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (v.front().second < 0) g = -g;
    if (g != 1)
        for (auto& [c, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// p * v - q * r, with both rows sorted by column.
IntRow combine(const mpz_class& p, const IntRow& v, const mpz_class& q, const IntRow& r) {
    IntRow out;
    out.reserve(v.size() + r.size());
    size_t a = 0, b = 0;
    while (a < v.size() || b < r.size()) {
        if (b == r.size() || (a < v.size() && v[a].first < r[b].first)) {
            out.emplace_back(v[a].first, p * v[a].second);
            ++a;
        } else if (a == v.size() || r[b].first < v[a].first) {
            out.emplace_back(r[b].first, -q * r[b].second);
            ++b;
        } else {
            mpz_class x = p * v[a].second - q * r[b].second;
            if (x != 0) out.emplace_back(v[a].first, std::move(x));
            ++a;
            ++b;
        }
    }
    return out;
}

}  // namespace

bool Echelon::insert(const std::map<int, Scalar>& v) {
    mpz_class den = 1;
    for (const auto& [c, x] : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntRow row;
    row.reserve(v.size());
    for (const auto& [c, x] : v) {
        if (sgn(x) == 0) continue;
        row.emplace_back(c, mpz_class(x.get_num() * (den / x.get_den())));
    }
    return insert_integer(std::move(row));
}

bool Echelon::insert_integer(IntRow v) {
    while (!v.empty()) {
        auto it = rows_.find(v.front().first);
        if (it == rows_.end()) {
            make_primitive(v);
            rows_.emplace(v.front().first, std::move(v));
            return true;
        }
        const IntRow& r = it->second;
        mpz_class g = gcd(r.front().second, v.front().second);
        mpz_class p = r.front().second / g, q = v.front().second / g;
        v = combine(p, v, q, r);
        if (!v.empty()) make_primitive(v);
    }
    return false;
}

int rank_of(const std::vector<std::map<int, Scalar>>& rows) {
    Echelon e;
    for (const auto& r : rows) e.insert(r);
    return e.rank();
}

}  // namespace e8
