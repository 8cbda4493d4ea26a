#include "lp_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

namespace {

__int128 gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const __int128 g = gcd(n, d);
    num = g ? n / g : 0;
    den = g ? d / g : 1;
}

Rational operator+(const Rational& a, const Rational& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(const Rational& a, const Rational& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }
Rational operator/(const Rational& a, const Rational& b) { return {a.num * b.den, a.den * b.num}; }
bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }

Rational simplex_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
    const std::size_t m = A.size(), n = c.size();
    // tableau rows: constraints with slacks; last row: reduced costs (negated c)
    std::vector<std::vector<Rational>> T(m + 1, std::vector<Rational>(n + m + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i].negative()) throw std::invalid_argument("simplex_max needs b >= 0");
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][n + m] = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) T[m][j] = Rational(0) - c[j];

    for (;;) {
        // Bland: lowest index with negative reduced cost enters
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (T[m][j].negative()) {
                enter = j;
                break;
            }
        if (enter == n + m) return T[m][n + m];
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (!T[i][enter].positive()) continue;
            const Rational r = T[i][n + m] / T[i][enter];
            if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
                leave = i;
                best = r;
            }
        }
        if (leave == m) throw std::runtime_error("LP unbounded");
        const Rational piv = T[leave][enter];
        for (auto& x : T[leave]) x = x / piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || T[i][enter].num == 0) continue;
            const Rational f = T[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) T[i][j] = T[i][j] - f * T[leave][j];
        }
        basis[leave] = enter;
    }
}

Rational lb8_lp(const hffs::Instance& inst) {
    struct Op {
        long long p1;
        long long pmax;  // time at w+
    };
    std::vector<Op> ops;
    for (int j = 0; j < inst.num_jobs(); ++j)
        for (int s : inst.route[static_cast<std::size_t>(j)]) {
            const auto su = static_cast<std::size_t>(s);
            ops.push_back({inst.proc(j, s, 1), inst.proc(j, s, inst.workers_max[su])});
        }
    const std::size_t no = ops.size(), nw = static_cast<std::size_t>(inst.workers_total);
    long long floor3 = 0;
    for (const auto& o : ops) floor3 = std::max(floor3, o.pmax);

    // Dual: u_op (lp1), v_w (lp2), z (lp3 collapsed to its largest right-hand
    // side; the smaller ones are implied).
    //   max sum u_op + floor3 * z
    //   Cmax column:     sum_w v_w + z <= 1
    //   x[op][w] column: u_op - p1(op) v_w <= 0
    const std::size_t nv = no + nw + 1;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<Rational> row(nv);
    for (std::size_t w = 0; w < nw; ++w) row[no + w] = 1;
    row[no + nw] = 1;
    A.push_back(row);
    b.push_back(1);
    for (std::size_t o = 0; o < no; ++o)
        for (std::size_t w = 0; w < nw; ++w) {
            std::vector<Rational> r(nv);
            r[o] = 1;
            r[no + w] = Rational(-ops[o].p1);
            A.push_back(r);
            b.push_back(0);
        }
    std::vector<Rational> c(nv);
    for (std::size_t o = 0; o < no; ++o) c[o] = 1;
    c[no + nw] = Rational(floor3);
    return simplex_max(A, b, c);
}

}  // namespace oracle
