#include "glab/trials.hpp"

#include <cstdlib>
#include <string>

namespace glab {

unsigned default_workers() {
    if (const char* env = std::getenv("GLAB_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace glab
