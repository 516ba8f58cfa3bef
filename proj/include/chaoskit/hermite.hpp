#pragma once

#include <stdexcept>
#include <vector>

namespace chaoskit {

// Probabilists' Hermite polynomial H_q via the three-term recurrence
// H_0 = 1, H_1 = x, H_{q+1} = x H_q - q H_{q-1}.
inline double hermite_eval(int q, double x) {
    if (q < 0) throw std::invalid_argument("hermite_eval: negative order");
    if (q == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int k = 1; k < q; ++k) {
        const double hp = x * h - k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

// Fills out[0..qmax] with H_0(x)..H_qmax(x).
inline void hermite_values(int qmax, double x, std::vector<double>& out) {
    out.resize(qmax + 1);
    out[0] = 1.0;
    if (qmax == 0) return;
    out[1] = x;
    for (int k = 1; k < qmax; ++k) out[k + 1] = x * out[k] - k * out[k - 1];
}

}  // namespace chaoskit
