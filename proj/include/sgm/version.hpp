#ifndef SGM_VERSION_HPP
#define SGM_VERSION_HPP

namespace sgm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace sgm

#endif
