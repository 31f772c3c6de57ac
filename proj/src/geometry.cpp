#include "routeproj/geometry.hpp"

#include "routeproj/kernels.hpp"

namespace routeproj {

bool CoordMatrix::all_finite() const noexcept {
    for (std::size_t i = 0; i < size(); ++i) {
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) return false;
    }
    return true;
}

Box bbox(const CoordMatrix& coords, IndexRange window) {
    if (window.empty()) throw std::invalid_argument("empty statistics window");
    if (window.end > coords.size()) throw std::out_of_range("statistics window exceeds matrix");
    return kernels::bounds(coords.xs().subspan(window.begin, window.size()),
                           coords.ys().subspan(window.begin, window.size()));
}

}  // namespace routeproj
