#include "invlab/family.hpp"

#include <stdexcept>

namespace invlab {

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::general: return "general";
        case FamilyKind::disjoint: return "disjoint";
        case FamilyKind::x_spaced: return "x_spaced";
        case FamilyKind::arithmetic: return "arithmetic";
    }
    return "general";
}

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "general") return FamilyKind::general;
    if (s == "disjoint") return FamilyKind::disjoint;
    if (s == "x_spaced") return FamilyKind::x_spaced;
    if (s == "arithmetic") return FamilyKind::arithmetic;
    throw std::domain_error("unknown family kind: " + s);
}

void IntervalFamily::validate() const {
    const auto pd = static_cast<double>(p);
    for (std::size_t j = 0; j < J(); ++j) {
        Interval a = i1(j), b = i2(j);
        if (!(a.lo > 0.0 && a.hi < pd))
            throw std::domain_error("IntervalFamily: I1 interval not contained in (0,p)");
        if (!(b.lo > 0.0 && b.hi < pd))
            throw std::domain_error("IntervalFamily: I2 interval not contained in (0,p)");
    }
    if (kind == FamilyKind::disjoint) {
        for (std::size_t j = 0; j < J(); ++j)
            for (std::size_t k = j + 1; k < J(); ++k)
                if (i1(j).overlaps(i1(k)))
                    throw std::domain_error("IntervalFamily: I1 intervals overlap");
    }
    if (kind == FamilyKind::arithmetic) {
        for (std::size_t j = 0; j < J(); ++j) {
            auto jj = static_cast<std::int64_t>(j + 1);
            if (centers[j].first != M + jj * X || centers[j].second != N + jj * Y)
                throw std::domain_error("IntervalFamily: centers are not the stated progression");
        }
    }
}

}  // namespace invlab
