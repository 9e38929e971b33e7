#ifndef CPT_FORMAT_HPP
#define CPT_FORMAT_HPP

#include <cstdio>
#include <string>

namespace cpt {

// Canonical float formatting for every serialized number: 17 significant
// digits round-trip a double exactly, and one shared formatter keeps CSV
// bodies and rendered configs byte-stable.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Short form for embedding parameter values in file names (0.5, 16, 1600).
inline std::string format_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace cpt

#endif
