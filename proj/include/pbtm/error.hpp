#pragma once

#include <stdexcept>
#include <string>

namespace pbtm {

enum class Errc {
  UnknownItem,
  ZeroWeight,
  UniverseTooLarge,
  UndefinedConfidence,
  EmptyTraining,
  UnknownLabel,
  ZeroEvidence,
  SchemaMismatch,
  InfeasibleConfig,
  InputError,
  Overflow,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pbtm
