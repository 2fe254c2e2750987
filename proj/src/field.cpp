#include "projcorrect/field.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace projcorrect {

namespace {

// Remainder of num modulo a monic divisor, coefficients mod p.
std::vector<int> poly_rem(std::vector<int> num, std::span<const int> monic_div, int p) {
    const std::size_t d = monic_div.size() - 1;
    while (num.size() > d) {
        const int lead = num.back() % p;
        if (lead != 0) {
            const std::size_t shift = num.size() - 1 - d;
            for (std::size_t i = 0; i <= d; ++i) {
                num[shift + i] = ((num[shift + i] - lead * monic_div[i]) % p + p) % p;
            }
        }
        num.pop_back();
    }
    return num;
}

const std::map<std::pair<int, int>, std::vector<int>>& standard_moduli() {
    static const std::map<std::pair<int, int>, std::vector<int>> table{
        {{2, 1}, {0, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{3, 1}, {0, 1}},
        {{3, 2}, {1, 0, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{5, 1}, {0, 1}},
        {{5, 2}, {2, 0, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 1}, {0, 1}},
        {{7, 2}, {1, 0, 1}},
    };
    return table;
}

}  // namespace

bool is_prime(int value) {
    if (value < 2) {
        return false;
    }
    for (int d = 2; d * d <= value; ++d) {
        if (value % d == 0) {
            return false;
        }
    }
    return true;
}

bool is_irreducible(int p, std::span<const int> monic_coeffs) {
    const int k = static_cast<int>(monic_coeffs.size()) - 1;
    if (k < 1) {
        return false;
    }
    // Any reducible polynomial has a monic factor of degree <= k/2.
    for (int d = 1; 2 * d <= k; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) {
            count *= p;
        }
        for (int code = 0; code < count; ++code) {
            std::vector<int> divisor(d + 1, 0);
            int rest = code;
            for (int i = 0; i < d; ++i) {
                divisor[i] = rest % p;
                rest /= p;
            }
            divisor[d] = 1;
            const auto rem = poly_rem(std::vector<int>(monic_coeffs.begin(), monic_coeffs.end()), divisor, p);
            if (std::all_of(rem.begin(), rem.end(), [](int c) { return c == 0; })) {
                return false;
            }
        }
    }
    return true;
}

int FieldSpec::order() const {
    int q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
    }
    return q;
}

void FieldSpec::validate() const {
    require(is_prime(p), "field characteristic " + std::to_string(p) + " is not prime");
    require(k >= 1, "extension degree must be >= 1");
    require(k <= 7, "extension degree too large");
    require(order() <= kMaxFieldOrder, "field order exceeds " + std::to_string(kMaxFieldOrder));
    require(static_cast<int>(modulus.size()) == k + 1, "modulus must have k+1 coefficients");
    require(std::all_of(modulus.begin(), modulus.end(), [this](int c) { return c >= 0 && c < p; }),
            "modulus coefficients must lie in [0, p)");
    require(modulus.back() == 1, "modulus must be monic");
    require(is_irreducible(p, modulus), "modulus is reducible over F_p");
}

FieldSpec FieldSpec::standard(int p, int k) {
    const auto& table = standard_moduli();
    const auto it = table.find({p, k});
    require(it != table.end(), "no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
    return FieldSpec{p, k, it->second};
}

FieldSpec FieldSpec::for_order(int q) {
    for (const auto& [key, modulus] : standard_moduli()) {
        FieldSpec spec{key.first, key.second, modulus};
        if (spec.order() == q) {
            return spec;
        }
    }
    throw PreconditionError("no built-in field of order " + std::to_string(q));
}

Field::Field(FieldSpec spec) {
    spec.validate();
    auto t = std::make_shared<Tables>();
    t->spec = std::move(spec);
    const int p = t->spec.p;
    const int k = t->spec.k;
    const int q = t->spec.order();
    t->q = q;

    std::vector<std::vector<int>> poly(q, std::vector<int>(k, 0));
    for (int code = 0; code < q; ++code) {
        int rest = code;
        for (int i = 0; i < k; ++i) {
            poly[code][i] = rest % p;
            rest /= p;
        }
    }
    auto encode = [&](const std::vector<int>& c) {
        std::uint32_t code = 0;
        for (int i = k - 1; i >= 0; --i) {
            code = code * p + static_cast<std::uint32_t>(c[i]);
        }
        return code;
    };

    const auto qq = static_cast<std::size_t>(q);
    t->add.resize(qq * qq);
    t->mul.resize(qq * qq);
    t->neg.resize(qq);
    t->inv.assign(qq, 0);
    for (int a = 0; a < q; ++a) {
        std::vector<int> negc(k);
        for (int i = 0; i < k; ++i) {
            negc[i] = (p - poly[a][i]) % p;
        }
        t->neg[a] = encode(negc);
        for (int b = 0; b < q; ++b) {
            std::vector<int> sum(k);
            for (int i = 0; i < k; ++i) {
                sum[i] = (poly[a][i] + poly[b][i]) % p;
            }
            t->add[a * qq + b] = encode(sum);

            std::vector<int> prod(2 * k - 1, 0);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) {
                    prod[i + j] = (prod[i + j] + poly[a][i] * poly[b][j]) % p;
                }
            }
            auto rem = poly_rem(std::move(prod), t->spec.modulus, p);
            rem.resize(k, 0);
            t->mul[a * qq + b] = encode(rem);
        }
    }
    for (int a = 1; a < q; ++a) {
        for (int b = 1; b < q; ++b) {
            if (t->mul[a * qq + b] == 1) {
                t->inv[a] = static_cast<std::uint32_t>(b);
                break;
            }
        }
    }
    t->frob.resize(k);
    for (int j = 0; j < k; ++j) {
        auto& row = t->frob[j];
        row.resize(qq);
        for (int a = 0; a < q; ++a) {
            std::uint32_t x = static_cast<std::uint32_t>(a);
            for (int step = 0; step < j; ++step) {
                // x <- x^p
                std::uint32_t power = 1;
                for (int e = 0; e < p; ++e) {
                    power = t->mul[power * qq + x];
                }
                x = power;
            }
            row[a] = x;
        }
    }
    tables_ = std::move(t);
}

Elem Field::inv(Elem a) const {
    require(a.code != 0, "inverse of zero");
    return Elem{tables_->inv[a.code]};
}

Elem Field::frobenius(Frobenius j, Elem a) const {
    const int e = ((j.exponent % k()) + k()) % k();
    return Elem{tables_->frob[e][a.code]};
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(q());
    for (int i = 0; i < q(); ++i) {
        out[i] = Elem{static_cast<std::uint32_t>(i)};
    }
    return out;
}

Elem Field::from_code(std::int64_t code) const {
    require(code >= 0 && code < q(), "element code " + std::to_string(code) + " out of range");
    return Elem{static_cast<std::uint32_t>(code)};
}

Elem Field::from_coeffs(std::span<const int> coeffs) const {
    require(static_cast<int>(coeffs.size()) == k(), "element must have exactly k coefficients");
    std::uint32_t code = 0;
    for (int i = k() - 1; i >= 0; --i) {
        require(coeffs[i] >= 0 && coeffs[i] < p(), "coefficient out of range");
        code = code * p() + static_cast<std::uint32_t>(coeffs[i]);
    }
    return Elem{code};
}

std::vector<int> Field::coeffs(Elem a) const {
    std::vector<int> out(k());
    std::uint32_t rest = a.code;
    for (int i = 0; i < k(); ++i) {
        out[i] = static_cast<int>(rest % p());
        rest /= p();
    }
    return out;
}

Elem Field::from_int(std::int64_t n) const {
    const std::int64_t r = ((n % p()) + p()) % p();
    return Elem{static_cast<std::uint32_t>(r)};
}

std::string Field::to_string(Elem a) const {
    if (k() == 1) {
        return std::to_string(a.code);
    }
    const auto c = coeffs(a);
    std::ostringstream out;
    bool first = true;
    for (int i = k() - 1; i >= 0; --i) {
        if (c[i] == 0) {
            continue;
        }
        if (!first) {
            out << '+';
        }
        first = false;
        if (i == 0 || c[i] != 1) {
            out << c[i];
        }
        if (i >= 1) {
            out << 'x';
        }
        if (i >= 2) {
            out << '^' << i;
        }
    }
    return first ? "0" : out.str();
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    require(a.field() == b.field(), "field elements belong to different fields");
}
}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field(), a.field().add(a.value(), b.value())};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field(), a.field().mul(a.value(), b.value())};
}

FieldElement inv(const FieldElement& a) { return {a.field(), a.field().inv(a.value())}; }

FieldElement frobenius_apply(Frobenius j, const FieldElement& a) {
    return {a.field(), a.field().frobenius(j, a.value())};
}

std::vector<FieldElement> enumerate_elements(const FieldSpec& spec) {
    const Field field(spec);
    std::vector<FieldElement> out;
    out.reserve(field.q());
    for (const Elem e : field.elements()) {
        out.emplace_back(field, e);
    }
    return out;
}

}  // namespace projcorrect
