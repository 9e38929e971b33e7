#ifndef CPT_VERSION_HPP
#define CPT_VERSION_HPP

namespace cpt {

inline constexpr const char* version_string = "1.0.0";

} // namespace cpt

#endif
