#pragma once

#include "wlreg/exactalg.hpp"

#include <ostream>

namespace wlreg {

// Readable gtest failure messages.
inline void PrintTo(const Rational& r, std::ostream* os) { *os << r.str(); }
inline void PrintTo(const RegValue& v, std::ostream* os) { *os << v.str(); }

}  // namespace wlreg
