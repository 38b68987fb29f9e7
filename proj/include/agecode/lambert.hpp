#pragma once

namespace agecode {

// Principal branch of w e^w = y for y >= 0.
// Residual bound: |w e^w - y| <= 1e-12 * max(1, y).
double lambert_w0(double y);

// W0(exp(log_y)) evaluated without forming exp(log_y); usable when that value
// would overflow. log_y = -inf maps to 0.
double lambert_w0_from_log(double log_y);

}  // namespace agecode
