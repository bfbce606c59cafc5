#pragma once

#include <stdexcept>
#include <string>

namespace arspi {

enum class Errc {
  Ok = 0,
  KindNotPermitted,
  DuplicateName,
  BuiltinOverwrite,
  PathOccupied,
  ProfileInvalid,
  SchemaMismatch,
  CorruptFile,
  UnknownId,
  DanglingEndpoint,
  KindMatrixViolation,
  PlacementViolation,
  IncompatibleRetailoring,
  KindMismatch,
  IterationAlreadyRunning,
  IterationNotRunning,
  UnknownIteration,
  UnknownChange,
  ChangeNotAccepted,
  GateNotSatisfied,
  ReleaseMissing,
  PlcMissing,
  CountMismatch,
  NotReady,
  WrongPhase,
  AlreadyReleased,
  MissingLinkedAssets,
  InvalidTriageState,
  SnapshotMismatch,
  EmptyChangeSet,
  LockTimeout,
  UsageError,
};

const char* errc_name(Errc code);

/// Exception carrying a stable error code plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace arspi
