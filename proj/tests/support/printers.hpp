#pragma once

#include <deltachow/deltachow.hpp>

#include <ostream>

namespace deltachow {

inline void PrintTo(const Polynomial& p, std::ostream* os) {
    static const VariableNames names({"x0", "x1", "x2", "x3"});
    *os << to_string(p, names);
}

}  // namespace deltachow
