#include "concrete_ring.hpp"

#include <charconv>

#include "bbring/errors.hpp"
#include "bbring/numtheory.hpp"

namespace bbring::blackbox {

using u64 = std::uint64_t;

ConcreteRing::ConcreteRing(std::vector<u64> moduli) : moduli_(std::move(moduli)) {
    for (u64 m : moduli_) order_ *= m;
}

std::vector<u64> ConcreteRing::digits(u64 index) const {
    std::vector<u64> d(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        d[i] = index % moduli_[i];
        index /= moduli_[i];
    }
    return d;
}

u64 ConcreteRing::from_digits(std::span<const u64> d) const {
    u64 index = 0;
    for (std::size_t i = moduli_.size(); i-- > 0;) index = index * moduli_[i] + d[i] % moduli_[i];
    return index;
}

u64 ConcreteRing::add(u64 a, u64 b) const {
    u64 out = 0;
    u64 place = 1;
    for (u64 m : moduli_) {
        u64 s = a % m + b % m;
        if (s >= m) s -= m;
        out += s * place;
        place *= m;
        a /= m;
        b /= m;
    }
    return out;
}

u64 ConcreteRing::neg(u64 a) const {
    std::vector<u64> d = digits(a);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = d[i] == 0 ? 0 : moduli_[i] - d[i];
    return from_digits(d);
}

namespace {

long long parse_integer(std::string_view text) {
    text = trim(text);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ParseError("malformed integer literal '" + std::string(text) + "'");
    return v;
}

u64 reduce_integer(long long v, u64 n) {
    if (v >= 0) return static_cast<u64>(v) % n;
    u64 r = static_cast<u64>(-(v + 1)) % n;  // avoids overflow at LLONG_MIN
    return n - 1 - r;
}

std::string_view strip_wrapping(std::string_view text, char open, char close) {
    text = trim(text);
    if (text.size() >= 2 && text.front() == open && text.back() == close) return text.substr(1, text.size() - 2);
    return text;
}

class ModularRing final : public ConcreteRing {
public:
    explicit ModularRing(u64 n) : ConcreteRing({n}), n_(n) {}

    u64 mul(u64 a, u64 b) const override { return nt::mulmod(a, b, n_); }
    u64 one() const override { return 1 % n_; }
    std::vector<u64> generators() const override { return {one()}; }
    std::string format(u64 index, bool) const override { return std::to_string(index); }
    u64 parse(std::string_view literal) const override { return reduce_integer(parse_integer(literal), n_); }

private:
    u64 n_;
};

std::vector<u64> concat_moduli(const std::vector<std::unique_ptr<ConcreteRing>>& factors) {
    std::vector<u64> out;
    for (const auto& f : factors) out.insert(out.end(), f->moduli().begin(), f->moduli().end());
    return out;
}

class ProductRing final : public ConcreteRing {
public:
    explicit ProductRing(std::vector<std::unique_ptr<ConcreteRing>> factors)
        : ConcreteRing(concat_moduli(factors)), factors_(std::move(factors)) {}

    u64 mul(u64 a, u64 b) const override {
        std::vector<u64> pa = split(a), pb = split(b), pc(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) pc[i] = factors_[i]->mul(pa[i], pb[i]);
        return join(pc);
    }

    u64 one() const override {
        std::vector<u64> parts(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) parts[i] = factors_[i]->one();
        return join(parts);
    }

    std::vector<u64> generators() const override {
        std::vector<u64> gens;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            for (u64 g : factors_[i]->generators()) {
                std::vector<u64> parts(factors_.size(), 0);
                parts[i] = g;
                gens.push_back(join(parts));
            }
        }
        gens.push_back(one());
        return gens;
    }

    std::string format(u64 index, bool) const override {
        std::vector<u64> parts = split(index);
        std::string out = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += ',';
            out += factors_[i]->format(parts[i], true);
        }
        return out + ")";
    }

    u64 parse(std::string_view literal) const override {
        std::string_view inner = trim(literal);
        if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
            throw ParseError("product literal must be a parenthesised tuple: '" + std::string(literal) + "'");
        std::vector<std::string> items = split_top_level(inner.substr(1, inner.size() - 2), ',');
        if (items.size() != factors_.size())
            throw ParseError("product literal has " + std::to_string(items.size()) + " components, expected " +
                             std::to_string(factors_.size()));
        std::vector<u64> parts(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) parts[i] = factors_[i]->parse(items[i]);
        return join(parts);
    }

private:
    std::vector<u64> split(u64 index) const {
        std::vector<u64> parts(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            parts[i] = index % factors_[i]->order();
            index /= factors_[i]->order();
        }
        return parts;
    }

    u64 join(const std::vector<u64>& parts) const {
        u64 index = 0;
        for (std::size_t i = factors_.size(); i-- > 0;) index = index * factors_[i]->order() + parts[i];
        return index;
    }

    std::vector<std::unique_ptr<ConcreteRing>> factors_;
};

std::vector<u64> repeat_moduli(const ConcreteRing& base, std::size_t copies) {
    std::vector<u64> out;
    for (std::size_t i = 0; i < copies; ++i) out.insert(out.end(), base.moduli().begin(), base.moduli().end());
    return out;
}

class MatrixRing final : public ConcreteRing {
public:
    MatrixRing(std::size_t k, std::unique_ptr<ConcreteRing> base)
        : ConcreteRing(repeat_moduli(*base, k * k)), k_(k), base_(std::move(base)) {}

    u64 mul(u64 a, u64 b) const override {
        std::vector<u64> A = entries(a), B = entries(b), C(k_ * k_, 0);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t l = 0; l < k_; ++l) {
                const u64 ail = A[i * k_ + l];
                if (ail == 0) continue;
                for (std::size_t j = 0; j < k_; ++j)
                    C[i * k_ + j] = base_->add(C[i * k_ + j], base_->mul(ail, B[l * k_ + j]));
            }
        return join(C);
    }

    u64 one() const override {
        std::vector<u64> E(k_ * k_, 0);
        for (std::size_t i = 0; i < k_; ++i) E[i * k_ + i] = base_->one();
        return join(E);
    }

    // g*E_11 for each base generator g, plus the cyclic shift sum_i E_{i,i+1}.
    std::vector<u64> generators() const override {
        std::vector<u64> gens;
        for (u64 g : base_->generators()) {
            std::vector<u64> E(k_ * k_, 0);
            E[0] = g;
            gens.push_back(join(E));
        }
        if (k_ >= 2) {
            std::vector<u64> P(k_ * k_, 0);
            for (std::size_t i = 0; i < k_; ++i) P[i * k_ + (i + 1) % k_] = base_->one();
            gens.push_back(join(P));
        }
        return gens;
    }

    std::string format(u64 index, bool nested) const override {
        std::vector<u64> E = entries(index);
        std::string out;
        for (std::size_t i = 0; i < k_; ++i) {
            if (i) out += ';';
            for (std::size_t j = 0; j < k_; ++j) {
                if (j) out += ',';
                out += base_->format(E[i * k_ + j], true);
            }
        }
        return nested ? "{" + out + "}" : out;
    }

    u64 parse(std::string_view literal) const override {
        std::vector<std::string> rows = split_top_level(strip_wrapping(literal, '{', '}'), ';');
        if (rows.size() != k_) throw ParseError("matrix literal needs " + std::to_string(k_) + " rows");
        std::vector<u64> E(k_ * k_);
        for (std::size_t i = 0; i < k_; ++i) {
            std::vector<std::string> cells = split_top_level(rows[i], ',');
            if (cells.size() != k_) throw ParseError("matrix literal row " + std::to_string(i + 1) + " needs " + std::to_string(k_) + " entries");
            for (std::size_t j = 0; j < k_; ++j) E[i * k_ + j] = base_->parse(cells[j]);
        }
        return join(E);
    }

private:
    std::vector<u64> entries(u64 index) const {
        std::vector<u64> E(k_ * k_);
        for (auto& e : E) {
            e = index % base_->order();
            index /= base_->order();
        }
        return E;
    }

    u64 join(const std::vector<u64>& E) const {
        u64 index = 0;
        for (std::size_t i = E.size(); i-- > 0;) index = index * base_->order() + E[i];
        return index;
    }

    std::size_t k_;
    std::unique_ptr<ConcreteRing> base_;
};

class PolyQuotientRing final : public ConcreteRing {
public:
    PolyQuotientRing(u64 p, std::vector<u64> f)
        : ConcreteRing(std::vector<u64>(f.size() - 1, p)), p_(p), f_(std::move(f)), degree_(f_.size() - 1) {
        for (u64& c : f_) c %= p_;
    }

    u64 mul(u64 a, u64 b) const override {
        std::vector<u64> A = digits(a), B = digits(b), C(2 * degree_ - 1, 0);
        for (std::size_t i = 0; i < degree_; ++i) {
            if (A[i] == 0) continue;
            for (std::size_t j = 0; j < degree_; ++j) C[i + j] = (C[i + j] + nt::mulmod(A[i], B[j], p_)) % p_;
        }
        return from_digits(reduce(std::move(C)));
    }

    u64 one() const override {
        std::vector<u64> c(degree_, 0);
        c[0] = 1 % p_;
        return from_digits(c);
    }

    std::vector<u64> generators() const override {
        std::vector<u64> x(2, 0);
        x[1] = 1;
        return {one(), from_digits(reduce(x))};
    }

    std::string format(u64 index, bool) const override {
        std::vector<u64> c = digits(index);
        std::string out = "[";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(c[i]);
        }
        return out + "]";
    }

    u64 parse(std::string_view literal) const override {
        std::string_view t = trim(literal);
        if (t.size() < 2 || t.front() != '[' || t.back() != ']')
            throw ParseError("polynomial literal must be a bracketed coefficient list: '" + std::string(literal) + "'");
        std::vector<u64> c;
        for (const std::string& item : split_top_level(t.substr(1, t.size() - 2), ','))
            c.push_back(reduce_integer(parse_integer(item), p_));
        if (c.empty()) c.push_back(0);
        return from_digits(reduce(std::move(c)));
    }

private:
    // Reduce modulo the monic f, returning exactly degree_ coefficients.
    std::vector<u64> reduce(std::vector<u64> c) const {
        for (std::size_t deg = c.size(); deg-- > degree_;) {
            const u64 lead = c[deg] % p_;
            if (lead == 0) continue;
            for (std::size_t i = 0; i < degree_; ++i) {
                const u64 sub = nt::mulmod(lead, f_[i], p_);
                u64& target = c[deg - degree_ + i];
                target = (target % p_ + p_ - sub) % p_;
            }
            c[deg] = 0;
        }
        c.resize(degree_, 0);
        for (u64& v : c) v %= p_;
        return c;
    }

    u64 p_;
    std::vector<u64> f_;
    std::size_t degree_;
};

}  // namespace

std::unique_ptr<ConcreteRing> build_concrete_ring(const RingSpec& spec) {
    switch (spec.kind) {
        case RingSpec::Kind::modular:
            return std::make_unique<ModularRing>(spec.n);
        case RingSpec::Kind::product: {
            std::vector<std::unique_ptr<ConcreteRing>> factors;
            for (const RingSpec& f : spec.factors) factors.push_back(build_concrete_ring(f));
            return std::make_unique<ProductRing>(std::move(factors));
        }
        case RingSpec::Kind::matrix:
            return std::make_unique<MatrixRing>(spec.k, build_concrete_ring(spec.base()));
        case RingSpec::Kind::polyquot:
            return std::make_unique<PolyQuotientRing>(spec.p, spec.f);
    }
    throw SpecError("ring.kind: unknown construction");
}

}  // namespace bbring::blackbox
