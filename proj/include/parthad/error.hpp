#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace parthad {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  SizeMismatch,
  LimitExceeded,
  TooManyUndefined,
  NotHadamard,
  NotSubmagic,
  NotCommuting,
  NotCompletable,
  RankError,
  DegenerateSplit,
  IllConditioned,
  Unsupported,
  DuplicateInRow,
  DuplicateInColumn,
  OutOfAlphabet,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::TooManyUndefined: return "TooManyUndefined";
    case ErrorKind::NotHadamard: return "NotHadamard";
    case ErrorKind::NotSubmagic: return "NotSubmagic";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotCompletable: return "NotCompletable";
    case ErrorKind::RankError: return "RankError";
    case ErrorKind::DegenerateSplit: return "DegenerateSplit";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::DuplicateInRow: return "DuplicateInRow";
    case ErrorKind::DuplicateInColumn: return "DuplicateInColumn";
    case ErrorKind::OutOfAlphabet: return "OutOfAlphabet";
  }
  return "Unknown";
}

/// Single exception type for the library. `kind()` selects the failure class;
/// `witness()` carries the numeric evidence where one exists (a norm, an index).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double witness = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        witness_(witness) {}

  ErrorKind kind() const noexcept { return kind_; }
  double witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  double witness_;
};

inline constexpr double kDefaultTol = 1e-9;

}  // namespace parthad
