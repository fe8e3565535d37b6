#pragma once

#include <cstdio>
#include <string>

namespace svrk {

// 5 significant digits, scientific, table style: "1.2795E-06".
inline std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4E", x);
  return buf;
}

}  // namespace svrk
