#pragma once

namespace rif {

#ifndef RIFSCATTER_VERSION
#define RIFSCATTER_VERSION "0.0.0"
#endif

inline const char* version() { return RIFSCATTER_VERSION; }

}  // namespace rif
