#include "cdimlab/common.hpp"

#include <cstdlib>

namespace cdimlab {

caps caps::from_env() {
    caps c;
    if (const char* v = std::getenv("CDIMLAB_CAP")) {
        char* end = nullptr;
        long val = std::strtol(v, &end, 10);
        if (end == v || val <= 0) fail(errc::bad_input, "CDIMLAB_CAP must be a positive integer");
        c.matrix_cache = static_cast<int>(val);
        c.hyperbolicity_scan = static_cast<int>(val);
        c.space_points = static_cast<int>(val);
    }
    return c;
}

}  // namespace cdimlab
