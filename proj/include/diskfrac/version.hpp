#ifndef DISKFRAC_VERSION_HPP_
#define DISKFRAC_VERSION_HPP_

#define DISKFRAC_VERSION_STRING "0.1.0"

namespace diskfrac {
inline const char* version() { return DISKFRAC_VERSION_STRING; }
}  // namespace diskfrac

#endif  // DISKFRAC_VERSION_HPP_
