#ifndef SIFTHOM_VERSION_HPP_
#define SIFTHOM_VERSION_HPP_

namespace sifthom {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sifthom

#endif  // SIFTHOM_VERSION_HPP_
