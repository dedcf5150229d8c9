#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "lucas8/exact.hpp"
#include "lucas8/numeric.hpp"
#include "lucas8/poly.hpp"

namespace lucas8 {

// K1 = Q(t), t^4 + 2t^2 - 1 = 0;  K2 = Q(f), f^4 + 4f^2 - 4 = 0.
enum class FieldId { None, K1, K2 };

const char* to_string(FieldId id);
FieldId field_from_string(const std::string& s);

// c0 + c1 a + c2 a^2 + c3 a^3 over the power basis of the generator a.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldId f, std::array<Rat, 4> c);
    FieldElement(FieldId f, const Rat& r);
    static FieldElement generator(FieldId f);

    FieldId field() const { return field_; }
    const std::array<Rat, 4>& coords() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_.at(i); }

    bool is_zero() const;
    bool is_rational() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const Rat& s, const FieldElement& a);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement inv() const;
    FieldElement pow(long e) const;

    std::string str() const;

private:
    FieldId field_ = FieldId::None;
    std::array<Rat, 4> c_{};
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }

struct FieldDescriptor {
    FieldId id;
    std::string name;
    std::string generator_name;
    std::array<Rat, 5> defining;  // monic, low to high
    std::array<FieldElement, 4> order_basis;
    std::vector<std::pair<std::string, FieldElement>> units;
    std::pair<std::string, FieldElement> prime_above_2;
    double approx_root;
};

const FieldDescriptor& descriptor(FieldId id);

FieldElement fe(FieldId f, const Rat& c0, const Rat& c1 = 0, const Rat& c2 = 0, const Rat& c3 = 0);

Rat norm(const FieldElement& x);
Rat trace(const FieldElement& x);
// Characteristic polynomial of multiplication by x, monic of degree 4.
QPoly charpoly(const FieldElement& x);
bool in_maximal_order(const FieldElement& x);
// Coordinates with respect to the maximal-order basis.
std::array<Rat, 4> order_coordinates(const FieldElement& x);

// Embeddings in the order (real a>0, real -a, complex, its conjugate).
std::array<Cplx, 4> embeddings(const FieldElement& x, unsigned digits);
std::array<Cplx, 4> generator_embeddings(FieldId f);
std::array<std::complex<double>, 4> embeddings_d(const FieldElement& x);
std::array<std::complex<double>, 4> generator_embeddings_d(FieldId f);

// Solve sum_j A[i][j] x_j = b_i exactly.
std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> a, std::vector<Rat> b);

}  // namespace lucas8
