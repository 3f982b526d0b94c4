#include "slpi/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace slpi {

namespace {

bool exps_less(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

SparsePoly::SparsePoly(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("SparsePoly needs nvars >= 1");
}

SparsePoly SparsePoly::from_terms(int nvars, std::vector<Term> terms, const Ring& ring) {
    SparsePoly p(nvars);
    std::map<std::vector<mpz_class>, RingElement> acc;
    for (auto& t : terms) {
        if (static_cast<int>(t.exps.size()) != nvars)
            throw std::invalid_argument("term exponent vector has wrong length");
        for (const auto& e : t.exps)
            if (e < 0) throw std::invalid_argument("negative exponent");
        auto it = acc.find(t.exps);
        if (it == acc.end())
            acc.emplace(std::move(t.exps), ring.canon(t.coeff));
        else
            it->second = ring.add(it->second, t.coeff);
    }
    for (auto& [e, c] : acc)
        if (!ring.is_zero(c)) p.terms_.push_back(Term{c, e});
    // std::map iteration is already lex order on the exponent vectors
    return p;
}

mpz_class SparsePoly::total_degree() const {
    mpz_class d = -1;
    for (const auto& t : terms_) {
        mpz_class s = 0;
        for (const auto& e : t.exps) s += e;
        if (s > d) d = s;
    }
    return d;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].exps != o.terms_[i].exps)
            return false;
    return true;
}

std::string SparsePoly::to_text() const {
    std::ostringstream out;
    out << "poly n=" << nvars_ << "\n";
    for (const auto& t : terms_) {
        out << t.coeff.get_str();
        for (const auto& e : t.exps) out << ' ' << e.get_str();
        out << "\n";
    }
    return out.str();
}

SparsePoly SparsePoly::parse(std::istream& in, const Ring& ring) {
    std::string line;
    int lineno = 0;
    int nvars = -1;
    std::vector<Term> terms;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (nvars < 0) {
            if (tok != "poly")
                throw std::runtime_error("line 1: expected 'poly n=<n>' header");
            std::string decl;
            if (!(ls >> decl) || decl.rfind("n=", 0) != 0)
                throw std::runtime_error("line 1: expected 'poly n=<n>' header");
            nvars = std::stoi(decl.substr(2));
            if (nvars < 1) throw std::runtime_error("line 1: n must be >= 1");
            continue;
        }
        Term t;
        if (t.coeff.set_str(tok, 10) != 0)
            throw std::runtime_error("line " + std::to_string(lineno) + ": bad coefficient");
        while (ls >> tok) {
            mpz_class e;
            if (e.set_str(tok, 10) != 0 || e < 0)
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad exponent");
            t.exps.push_back(std::move(e));
        }
        if (static_cast<int>(t.exps.size()) != nvars)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(nvars) + " exponents");
        terms.push_back(std::move(t));
    }
    if (nvars < 0) throw std::runtime_error("empty polynomial file");
    return from_terms(nvars, std::move(terms), ring);
}

SparsePoly SparsePoly::parse_text(const std::string& text, const Ring& ring) {
    std::istringstream in(text);
    return parse(in, ring);
}

SparsePoly poly_add(const SparsePoly& f, const SparsePoly& g, const Ring& ring) {
    if (f.nvars() != g.nvars()) throw std::invalid_argument("nvars mismatch");
    std::vector<Term> ts = f.terms();
    for (const auto& t : g.terms()) ts.push_back(t);
    return SparsePoly::from_terms(f.nvars(), std::move(ts), ring);
}

SparsePoly poly_sub(const SparsePoly& f, const SparsePoly& g, const Ring& ring) {
    if (f.nvars() != g.nvars()) throw std::invalid_argument("nvars mismatch");
    std::vector<Term> ts = f.terms();
    for (const auto& t : g.terms()) ts.push_back(Term{ring.neg(t.coeff), t.exps});
    return SparsePoly::from_terms(f.nvars(), std::move(ts), ring);
}

SparsePoly poly_mul(const SparsePoly& f, const SparsePoly& g, const Ring& ring) {
    if (f.nvars() != g.nvars()) throw std::invalid_argument("nvars mismatch");
    std::vector<Term> ts;
    ts.reserve(f.term_count() * g.term_count());
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) {
            Term t;
            t.coeff = ring.mul(a.coeff, b.coeff);
            t.exps.resize(a.exps.size());
            for (std::size_t i = 0; i < a.exps.size(); ++i) t.exps[i] = a.exps[i] + b.exps[i];
            ts.push_back(std::move(t));
        }
    return SparsePoly::from_terms(f.nvars(), std::move(ts), ring);
}

mpz_class packed_exponent(const std::vector<mpz_class>& exps, const ExponentMap& a) {
    if (exps.size() != a.size()) throw std::invalid_argument("exponent map length mismatch");
    mpz_class s = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) s += exps[i] * a[i];
    return s;
}

CyclicPoly::CyclicPoly(std::uint64_t modulus) : modulus_(modulus) {
    if (modulus < 1) throw std::invalid_argument("CyclicPoly modulus must be >= 1");
}

CyclicPoly CyclicPoly::from_entries(std::uint64_t modulus,
                                    std::vector<std::pair<std::uint64_t, RingElement>> entries,
                                    const Ring& ring) {
    CyclicPoly r(modulus);
    std::map<std::uint64_t, RingElement> acc;
    for (auto& [d, c] : entries) {
        if (d >= modulus) throw std::invalid_argument("degree out of range");
        auto it = acc.find(d);
        if (it == acc.end())
            acc.emplace(d, ring.canon(c));
        else
            it->second = ring.add(it->second, c);
    }
    for (auto& [d, c] : acc)
        if (!ring.is_zero(c)) r.entries_.emplace_back(d, c);
    return r;
}

RingElement CyclicPoly::coeff_at(std::uint64_t degree) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), degree,
                               [](const auto& e, std::uint64_t d) { return e.first < d; });
    if (it != entries_.end() && it->first == degree) return it->second;
    return RingElement(0);
}

bool CyclicPoly::has_coeff(std::uint64_t degree, const RingElement& c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), degree,
                               [](const auto& e, std::uint64_t d) { return e.first < d; });
    return it != entries_.end() && it->first == degree && it->second == c;
}

bool CyclicPoly::operator==(const CyclicPoly& o) const {
    return modulus_ == o.modulus_ && entries_ == o.entries_;
}

CyclicPoly cyclic_mul(const CyclicPoly& a, const CyclicPoly& b, const Ring& ring) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("cyclic modulus mismatch");
    const std::uint64_t p = a.modulus();
    std::map<std::uint64_t, RingElement> acc;
    for (const auto& [da, ca] : a.entries())
        for (const auto& [db, cb] : b.entries()) {
            std::uint64_t d = da + db;  // p < 2^63 so no overflow
            if (d >= p) d -= p;
            RingElement prod = ring.mul(ca, cb);
            auto it = acc.find(d);
            if (it == acc.end())
                acc.emplace(d, std::move(prod));
            else
                it->second = ring.add(it->second, prod);
        }
    CyclicPoly r(p);
    std::vector<std::pair<std::uint64_t, RingElement>> entries;
    for (auto& [d, c] : acc)
        if (!ring.is_zero(c)) entries.emplace_back(d, c);
    return CyclicPoly::from_entries(p, std::move(entries), ring);
}

namespace {

CyclicPoly cyclic_combine(const CyclicPoly& a, const CyclicPoly& b, bool subtract,
                          const Ring& ring) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("cyclic modulus mismatch");
    std::vector<std::pair<std::uint64_t, RingElement>> entries = a.entries();
    for (const auto& [d, c] : b.entries())
        entries.emplace_back(d, subtract ? ring.neg(c) : c);
    return CyclicPoly::from_entries(a.modulus(), std::move(entries), ring);
}

}  // namespace

CyclicPoly cyclic_add(const CyclicPoly& a, const CyclicPoly& b, const Ring& ring) {
    return cyclic_combine(a, b, false, ring);
}

CyclicPoly cyclic_sub(const CyclicPoly& a, const CyclicPoly& b, const Ring& ring) {
    return cyclic_combine(a, b, true, ring);
}

CyclicPoly sparse_image(const SparsePoly& f, const ExponentMap& a, std::uint64_t p,
                        const Ring& ring) {
    if (static_cast<std::size_t>(f.nvars()) != a.size())
        throw std::invalid_argument("exponent map length mismatch");
    std::vector<std::pair<std::uint64_t, RingElement>> entries;
    entries.reserve(f.term_count());
    mpz_class pm(static_cast<unsigned long>(p));
    for (const auto& t : f.terms()) {
        mpz_class d = packed_exponent(t.exps, a) % pm;
        entries.emplace_back(d.get_ui(), t.coeff);
    }
    return CyclicPoly::from_entries(p, std::move(entries), ring);
}

CyclicPoly cyclic_reduce(const CyclicPoly& f, std::uint64_t q, const Ring& ring) {
    std::vector<std::pair<std::uint64_t, RingElement>> entries;
    entries.reserve(f.term_count());
    for (const auto& [d, c] : f.entries()) entries.emplace_back(d % q, c);
    return CyclicPoly::from_entries(q, std::move(entries), ring);
}

}  // namespace slpi
