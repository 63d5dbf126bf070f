#ifndef TEST_HELPERS_HPP
#define TEST_HELPERS_HPP

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "univint/field.hpp"

namespace th {

inline std::vector<univint::FieldCtx> const& test_fields()
{
    static std::vector<univint::FieldCtx> f{univint::FieldCtx::rational(), univint::FieldCtx::quadratic(-1),
                                             univint::FieldCtx::quadratic(-5), univint::FieldCtx::quadratic(5)};
    return f;
}

inline std::string str(univint::NfElem const& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

// random element of height <= H
inline univint::NfElem random_elem(univint::FieldCtx const& K, std::mt19937_64& rng, long H, bool nonzero = true)
{
    std::uniform_int_distribution<long> num(-H, H), den(1, H);
    for (;;) {
        long c = den(rng);
        univint::NfElem x = K.elem(univint::Rat(num(rng), c), K.is_rational() ? univint::Rat(0) : univint::Rat(num(rng), c));
        if (!nonzero || !x.is_zero()) return x;
    }
}

}  // namespace th

#endif
