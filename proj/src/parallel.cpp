#include "qekr/parallel.hpp"

#include "qekr/errors.hpp"

namespace qekr {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::NotInSpace: return "NotInSpace";
    case ErrorKind::NotAffine: return "NotAffine";
    case ErrorKind::InvalidFieldOrder: return "InvalidFieldOrder";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::FormUnavailable: return "FormUnavailable";
    case ErrorKind::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorKind::FormMismatch: return "FormMismatch";
    case ErrorKind::BadAnchors: return "BadAnchors";
    case ErrorKind::NotIntersecting: return "NotIntersecting";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UnknownLemma: return "UnknownLemma";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
  }
  return "Error";
}

}  // namespace qekr
