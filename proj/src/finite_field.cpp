#include "sepred/finite_field.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "sepred/errors.hpp"

namespace sepred {

namespace {

struct ConwayEntry {
    std::uint32_t p;
    std::uint32_t e;
    std::vector<std::uint32_t> coeffs;  // constant term first, monic
};

// Conway polynomials for every extension field of order <= 512.
const std::vector<ConwayEntry>& conway_table() {
    static const std::vector<ConwayEntry> table = {
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 1, 1, 0, 1}},
        {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
        {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
        {3, 2, {2, 2, 1}},
        {3, 3, {1, 2, 0, 1}},
        {3, 4, {2, 0, 0, 2, 1}},
        {3, 5, {1, 2, 0, 0, 0, 1}},
        {5, 2, {2, 4, 1}},
        {5, 3, {3, 3, 0, 1}},
        {7, 2, {3, 6, 1}},
        {7, 3, {4, 0, 6, 1}},
        {11, 2, {2, 7, 1}},
        {13, 2, {2, 12, 1}},
        {17, 2, {3, 16, 1}},
        {19, 2, {2, 18, 1}},
    };
    return table;
}

std::vector<std::uint32_t> to_digits(Elem a, std::uint32_t p, std::uint32_t e) {
    std::vector<std::uint32_t> d(e);
    for (std::uint32_t i = 0; i < e; ++i) {
        d[i] = a % p;
        a /= p;
    }
    return d;
}

Elem from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    Elem v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t e) {
    for (const auto& entry : conway_table())
        if (entry.p == p && entry.e == e) return entry.coeffs;
    return {};
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    const std::size_t deg = poly.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    // Try every monic divisor of degree 1..deg/2.
    for (std::size_t fd = 1; fd <= deg / 2; ++fd) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < fd; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint32_t> f(fd + 1);
            std::uint64_t x = idx;
            for (std::size_t i = 0; i < fd; ++i) {
                f[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            f[fd] = 1;
            std::vector<std::uint32_t> r(poly);
            for (std::size_t top = deg; top >= fd; --top) {
                const std::uint32_t c = r[top];
                if (c != 0)
                    for (std::size_t i = 0; i <= fd; ++i)
                        r[top - fd + i] = static_cast<std::uint32_t>(
                            (r[top - fd + i] + static_cast<std::uint64_t>(p - c) * f[i]) % p);
                if (top == fd) break;
            }
            bool zero = true;
            for (std::size_t i = 0; i < fd; ++i) zero = zero && r[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t e, std::uint64_t limit) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw InvalidArgument("field extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > limit) throw InvalidArgument("field order exceeds configured limit");
    }
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Field>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, e}); it != cache.end()) return it->second;

    std::vector<std::uint32_t> modulus;
    if (e == 1) {
        modulus = {0, 1};
    } else {
        modulus = conway_polynomial(p, e);
        if (modulus.empty())
            throw InvalidArgument("no embedded Conway polynomial for GF(" + std::to_string(p) + "^" +
                                  std::to_string(e) + ")");
    }
    std::shared_ptr<const Field> f(new Field(p, e, std::move(modulus)));
    cache.emplace(std::make_pair(p, e), f);
    return f;
}

std::shared_ptr<const Field> Field::of_order(std::uint64_t q) {
    if (q < 2) throw InvalidArgument("field order must be >= 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return make(static_cast<std::uint32_t>(p), e);
}

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
    for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
    if (q_ <= 256) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        mul_table_.resize(static_cast<std::size_t>(q_) * q_);
        neg_table_.resize(q_);
        inv_table_.resize(q_);
        for (Elem a = 0; a < q_; ++a) {
            for (Elem b = 0; b < q_; ++b) {
                add_table_[a * q_ + b] = static_cast<std::uint16_t>(digit_add(a, b, false));
                mul_table_[a * q_ + b] = static_cast<std::uint16_t>(poly_mul(a, b));
            }
            neg_table_[a] = static_cast<std::uint16_t>(digit_add(0, a, true));
        }
        for (Elem a = 1; a < q_; ++a)
            for (Elem b = 1; b < q_; ++b)
                if (mul_table_[a * q_ + b] == 1) {
                    inv_table_[a] = static_cast<std::uint16_t>(b);
                    break;
                }
        tables_ = true;
    }
}

Elem Field::digit_add(Elem a, Elem b, bool subtract) const {
    if (e_ == 1) {
        const std::uint64_t bb = subtract ? (p_ - b % p_) % p_ : b;
        return static_cast<Elem>((a + bb) % p_);
    }
    if (p_ == 2) return a ^ b;
    Elem result = 0;
    Elem scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        const std::uint32_t da = a % p_;
        const std::uint32_t db = b % p_;
        a /= p_;
        b /= p_;
        const std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
        result += d * scale;
        scale *= p_;
    }
    return result;
}

Elem Field::poly_mul(Elem a, Elem b) const {
    if (e_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    const auto da = to_digits(a, p_, e_);
    const auto db = to_digits(b, p_, e_);
    std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
        for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    // reduce by the monic modulus from the top degree down
    for (std::size_t top = prod.size() - 1; top >= e_; --top) {
        const std::uint64_t c = prod[top];
        if (c != 0)
            for (std::uint32_t i = 0; i <= e_; ++i)
                prod[top - e_ + i] = (prod[top - e_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    std::vector<std::uint32_t> out(e_);
    for (std::uint32_t i = 0; i < e_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return from_digits(out, p_);
}

Elem Field::add(Elem a, Elem b) const {
    if (tables_) return add_table_[a * q_ + b];
    return digit_add(a, b, false);
}

Elem Field::sub(Elem a, Elem b) const {
    if (tables_) return add_table_[a * q_ + neg_table_[b]];
    return digit_add(a, b, true);
}

Elem Field::neg(Elem a) const {
    if (tables_) return neg_table_[a];
    return digit_add(0, a, true);
}

Elem Field::mul(Elem a, Elem b) const {
    if (tables_) return mul_table_[a * q_ + b];
    return poly_mul(a, b);
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw InvalidArgument("inverse of zero in " + name());
    if (tables_) return inv_table_[a];
    return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t exponent) const {
    Elem result = 1;
    Elem base = a;
    while (exponent) {
        if (exponent & 1) result = mul(result, base);
        base = mul(base, base);
        exponent >>= 1;
    }
    return result;
}

std::uint64_t Field::element_order(Elem a) const {
    if (a == 0) throw InvalidArgument("zero has no multiplicative order");
    std::uint64_t k = 1;
    Elem x = a;
    while (x != 1) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::string Field::name() const {
    return "GF(" + std::to_string(q_) + ")";
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
    if (value_ >= field_->order()) throw InvalidArgument("element index out of range for " + field_->name());
}

const Field& FieldElement::same_field(const FieldElement& o) const {
    if (!(*field_ == *o.field_)) throw InvalidArgument("field mismatch: " + field_->name() + " vs " + o.field_->name());
    return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return {field_, same_field(o).add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    return {field_, same_field(o).sub(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    return {field_, same_field(o).mul(value_, o.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    return {field_, same_field(o).div(value_, o.value_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }

FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }

}  // namespace sepred
