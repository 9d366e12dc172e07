#pragma once

namespace qde {

// Closed coordinate box [lo, hi] applied uniformly to every dimension.
struct Bounds {
    double lo = -5.0;
    double hi = 5.0;
};

}  // namespace qde
