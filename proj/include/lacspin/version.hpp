#ifndef LACSPIN_VERSION_HPP
#define LACSPIN_VERSION_HPP

#define LACSPIN_VERSION_STRING "0.1.0"

namespace lacspin {
inline constexpr const char* kVersion = LACSPIN_VERSION_STRING;
}

#endif
