#include "abeltrace/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "abeltrace/errors.hpp"

namespace abeltrace {

namespace {

void check_exponents(int num_vars, const ExpVec& e, const char* where) {
    if (static_cast<int>(e.size()) != num_vars)
        throw ShapeError(where, "exponent vector length does not match variable count");
    for (int v : e)
        if (v < 0) throw ShapeError(where, "negative exponent");
}

} // namespace

MultiPoly::MultiPoly(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 1) throw ShapeError("MultiPoly", "variable count must be positive");
}

MultiPoly::MultiPoly(int num_vars, TermMap terms) : num_vars_(num_vars), terms_(std::move(terms)) {
    if (num_vars < 1) throw ShapeError("MultiPoly", "variable count must be positive");
    for (auto it = terms_.begin(); it != terms_.end();) {
        check_exponents(num_vars_, it->first, "MultiPoly");
        if (it->second == cplx(0.0, 0.0))
            it = terms_.erase(it);
        else
            ++it;
    }
}

MultiPoly MultiPoly::zero(int num_vars) { return MultiPoly(num_vars); }

MultiPoly MultiPoly::constant(int num_vars, cplx c) {
    MultiPoly p(num_vars);
    if (c != cplx(0.0, 0.0)) p.terms_[ExpVec(num_vars, 0)] = c;
    return p;
}

MultiPoly MultiPoly::variable(int num_vars, int i) {
    if (i < 0 || i >= num_vars) throw ShapeError("MultiPoly::variable", "variable index out of range");
    ExpVec e(num_vars, 0);
    e[i] = 1;
    return monomial(e, cplx(1.0, 0.0));
}

MultiPoly MultiPoly::monomial(const ExpVec& exponents, cplx c) {
    MultiPoly p(static_cast<int>(exponents.size()));
    check_exponents(p.num_vars_, exponents, "MultiPoly::monomial");
    if (c != cplx(0.0, 0.0)) p.terms_[exponents] = c;
    return p;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

int MultiPoly::degree_in(int i) const {
    if (i < 0 || i >= num_vars_) throw ShapeError("MultiPoly::degree_in", "variable index out of range");
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
}

cplx MultiPoly::coefficient(const ExpVec& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
}

void MultiPoly::set_coefficient(const ExpVec& exponents, cplx c) {
    check_exponents(num_vars_, exponents, "MultiPoly::set_coefficient");
    if (c == cplx(0.0, 0.0))
        terms_.erase(exponents);
    else
        terms_[exponents] = c;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    if (other.num_vars_ != num_vars_) throw ShapeError("MultiPoly::+", "variable count mismatch");
    for (const auto& [e, c] : other.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    if (other.num_vars_ != num_vars_) throw ShapeError("MultiPoly::-", "variable count mismatch");
    for (const auto& [e, c] : other.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator*=(cplx scalar) {
    if (scalar == cplx(0.0, 0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= scalar;
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    MultiPoly r = *this;
    r += other;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const {
    MultiPoly r = *this;
    r -= other;
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
    if (other.num_vars_ != num_vars_) throw ShapeError("MultiPoly::*", "variable count mismatch");
    MultiPoly r(num_vars_);
    ExpVec e(num_vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            for (int i = 0; i < num_vars_; ++i) e[i] = ea[i] + eb[i];
            auto [it, inserted] = r.terms_.try_emplace(e, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = (it->second == cplx(0.0, 0.0)) ? r.terms_.erase(it) : std::next(it);
    return r;
}

MultiPoly MultiPoly::operator*(cplx scalar) const {
    MultiPoly r = *this;
    r *= scalar;
    return r;
}

MultiPoly MultiPoly::pow(int exponent) const {
    if (exponent < 0) throw ShapeError("MultiPoly::pow", "negative exponent");
    MultiPoly r = constant(num_vars_, 1.0);
    MultiPoly base = *this;
    int e = exponent;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = (e >>= 1) ? base * base : base;
    }
    return r;
}

double MultiPoly::max_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

MultiPoly MultiPoly::pruned(double rel_tol) const {
    const double cutoff = rel_tol * max_coeff();
    MultiPoly r(num_vars_);
    for (const auto& [e, c] : terms_)
        if (std::abs(c) >= cutoff && c != cplx(0.0, 0.0)) r.terms_[e] = c;
    return r;
}

MultiPoly MultiPoly::normalized() const {
    if (terms_.empty()) return *this;
    const double m = max_coeff();
    cplx pivot = 0.0;
    for (const auto& [e, c] : terms_) {
        // first (lex-smallest) coefficient within the near-tie window wins
        if (std::abs(c) >= (1.0 - 1e-4) * m) {
            pivot = c;
            break;
        }
    }
    MultiPoly r = *this;
    r *= cplx(1.0, 0.0) / pivot;
    return r.pruned();
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        for (int i = 0; i < num_vars_; ++i) {
            if (e[i] == 0) continue;
            out << "*x" << (i + 1);
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

cplx poly_eval(const MultiPoly& p, std::span<const cplx> x) {
    if (static_cast<int>(x.size()) != p.num_vars())
        throw ShapeError("poly_eval", "point length does not match variable count");
    cplx sum = 0.0;
    for (const auto& [e, c] : p.terms()) {
        cplx term = c;
        for (int i = 0; i < p.num_vars(); ++i) {
            cplx base = x[i];
            for (int k = 0; k < e[i]; ++k) term *= base;
        }
        sum += term;
    }
    return sum;
}

cplx poly_eval(const MultiPoly& p, const CVec& x) { return poly_eval(p, std::span<const cplx>(x)); }

MultiPoly poly_diff(const MultiPoly& p, int i) {
    if (i < 0 || i >= p.num_vars()) throw ShapeError("poly_diff", "variable index out of range");
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms()) {
        if (e[i] == 0) continue;
        ExpVec d = e;
        d[i] -= 1;
        terms[d] = c * static_cast<double>(e[i]);
    }
    return MultiPoly(p.num_vars(), std::move(terms));
}

MultiPoly poly_compose(const MultiPoly& p, const std::vector<MultiPoly>& subs) {
    if (static_cast<int>(subs.size()) != p.num_vars())
        throw ShapeError("poly_compose", "substitution count does not match variable count");
    const int out_vars = subs.empty() ? 1 : subs.front().num_vars();
    for (const auto& s : subs)
        if (s.num_vars() != out_vars) throw ShapeError("poly_compose", "substitutions disagree on variable count");

    MultiPoly result = MultiPoly::zero(out_vars);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(out_vars, c);
        for (int i = 0; i < p.num_vars(); ++i)
            if (e[i] > 0) term = term * subs[i].pow(e[i]);
        result += term;
    }
    return result;
}

MultiPoly truncate_degree(const MultiPoly& p, int max_degree) {
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : p.terms())
        if (std::accumulate(e.begin(), e.end(), 0) <= max_degree) terms[e] = c;
    return MultiPoly(p.num_vars(), std::move(terms));
}

MultiPoly mul_truncated(const MultiPoly& a, const MultiPoly& b, int max_degree) {
    if (a.num_vars() != b.num_vars()) throw ShapeError("mul_truncated", "variable count mismatch");
    const int n = a.num_vars();
    MultiPoly::TermMap terms;
    ExpVec e(n);
    for (const auto& [ea, ca] : a.terms()) {
        const int da = std::accumulate(ea.begin(), ea.end(), 0);
        if (da > max_degree) continue;
        for (const auto& [eb, cb] : b.terms()) {
            const int db = std::accumulate(eb.begin(), eb.end(), 0);
            if (da + db > max_degree) continue;
            for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            terms[e] += ca * cb;
        }
    }
    return MultiPoly(n, std::move(terms));
}

MultiPoly series_inverse(const MultiPoly& p, int max_degree) {
    const ExpVec zero_exp(p.num_vars(), 0);
    const cplx c0 = p.coefficient(zero_exp);
    if (std::abs(c0) == 0.0)
        throw DomainError("series_inverse", "series has vanishing constant term");
    MultiPoly r = MultiPoly::constant(p.num_vars(), cplx(1.0, 0.0) / c0);
    const MultiPoly two = MultiPoly::constant(p.num_vars(), 2.0);
    int order = 1;
    while (order <= max_degree) {
        // Newton step r <- r(2 - pr), doubling the correct order each pass.
        order *= 2;
        const int cap = std::min(order, max_degree);
        MultiPoly pr = mul_truncated(p, r, cap);
        r = mul_truncated(r, two - pr, cap);
    }
    return r;
}

LinearForm::LinearForm(CVec coeffs) : coefficients(std::move(coeffs)) {
    bool all_zero = true;
    for (const cplx& c : coefficients)
        if (c != cplx(0.0, 0.0)) all_zero = false;
    if (coefficients.empty() || all_zero)
        throw ShapeError("LinearForm", "coefficients must not be all zero");
}

cplx LinearForm::eval(std::span<const cplx> x) const {
    if (x.size() != coefficients.size())
        throw ShapeError("LinearForm::eval", "point length does not match variable count");
    cplx sum = 0.0;
    for (size_t i = 0; i < coefficients.size(); ++i) sum += coefficients[i] * x[i];
    return sum;
}

MultiPoly LinearForm::as_poly() const {
    MultiPoly p(num_vars());
    for (int i = 0; i < num_vars(); ++i) {
        ExpVec e(num_vars(), 0);
        e[i] = 1;
        p.set_coefficient(e, coefficients[i]);
    }
    return p;
}

} // namespace abeltrace
