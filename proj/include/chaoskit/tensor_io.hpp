#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "chaoskit/symmetric_tensor.hpp"

namespace chaoskit {

// Tensor literal text format used by tests and config files:
//   header line:  order dim
//   entry lines:  i1 i2 ... iq value        (one per stored coefficient)
// Blank lines and lines starting with '#' are ignored. An order-0 tensor has
// entry lines consisting of the bare value.

inline SymmetricTensor parse_tensor(std::istream& in) {
    std::string line;
    int order = -1, dim = -1;
    int lineno = 0;

    auto next_content_line = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string content;
    if (!next_content_line(content))
        throw std::runtime_error("parse_tensor: missing header line");
    {
        std::istringstream hs(content);
        if (!(hs >> order >> dim))
            throw std::runtime_error("parse_tensor: bad header at line " +
                                     std::to_string(lineno));
    }
    SymmetricTensor t(order, dim);

    while (next_content_line(content)) {
        std::istringstream ls(content);
        MultiIndex m(order);
        for (int k = 0; k < order; ++k) {
            if (!(ls >> m[k]))
                throw std::runtime_error("parse_tensor: bad entry at line " +
                                         std::to_string(lineno));
        }
        double v;
        if (!(ls >> v))
            throw std::runtime_error("parse_tensor: missing value at line " +
                                     std::to_string(lineno));
        std::string trailing;
        if (ls >> trailing)
            throw std::runtime_error("parse_tensor: trailing tokens at line " +
                                     std::to_string(lineno));
        t.accumulate(std::move(m), v);
    }
    return t;
}

inline SymmetricTensor parse_tensor(const std::string& text) {
    std::istringstream in(text);
    return parse_tensor(in);
}

inline void format_tensor(std::ostream& out, const SymmetricTensor& t) {
    out << t.order() << ' ' << t.dim() << '\n';
    char buf[40];
    for (const auto& [m, v] : t.coeffs()) {
        for (int i : m) out << i << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << '\n';
    }
}

inline std::string format_tensor(const SymmetricTensor& t) {
    std::ostringstream out;
    format_tensor(out, t);
    return out.str();
}

}  // namespace chaoskit
