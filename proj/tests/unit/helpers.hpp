#pragma once

#include <doctest.h>

#include <string>

#include "sqrtvelu/checks.hpp"
#include "sqrtvelu/error.hpp"

// Runs a property check and reports the first failing case.
#define CHECK_PROPERTY(expr)                                       \
  do {                                                             \
    const ::sqrtvelu::checks::Result _r = (expr);                  \
    INFO("first failure: " << _r.first_failure);                   \
    CHECK(_r.cases > 0);                                           \
    CHECK(_r.failures == 0);                                       \
  } while (0)

#define CHECK_ERRC(expr, errc)                                     \
  do {                                                             \
    bool _thrown = false;                                          \
    try {                                                          \
      (void)(expr);                                                \
    } catch (const ::sqrtvelu::Error& _e) {                        \
      _thrown = true;                                              \
      CHECK(_e.code() == (errc));                                  \
    }                                                              \
    CHECK_MESSAGE(_thrown, "expected " #errc);                     \
  } while (0)

#include "sqrtvelu/isogeny.hpp"

inline sqrtvelu::EngineChoice choice(sqrtvelu::Engine mode) {
  sqrtvelu::EngineChoice e;
  e.mode = mode;
  return e;
}
