#pragma once

#include "ppwalk/eigencurve.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ppwalk::pingpong {

using eigencurve::Point;

enum class MoveKind { Start, WithinAnnulus, Twin };

// Which argument licenses a move. The string forms are part of the
// certificate schema.
enum class Justification { Propagation, SlopeOfTwinPoint, PingPong, FirstStep, InductionStep };

const char* move_kind_name(MoveKind kind);              // "start", "within_annulus", "twin"
const char* justification_name(Justification j);       // "lem_propagation", ...
MoveKind parse_move_kind(const std::string& s);
Justification parse_justification(const std::string& s);

struct Move {
  MoveKind kind;
  Point from;
  Point to;
  Justification justification;
  friend bool operator==(const Move&, const Move&) = default;
};

// A hypothesis the walk consumes. status is one of "axiom", "assumed",
// "discharged" or "refuted".
struct Assumption {
  std::string id;
  std::string status;
  std::string detail;
  friend bool operator==(const Assumption&, const Assumption&) = default;
};

inline constexpr int kCertificateSchema = 1;

struct Certificate {
  int schema = kCertificateSchema;
  long start_index = 0;
  long end_index = 0;
  std::vector<Move> moves;
  std::vector<Assumption> assumptions;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct FirstStep {
  long k_prime;
  Point z_prime;         // on X_i, slope 2i, weight k' = 2i + 2^{m+1} - 1
  Point z_doubleprime;   // twin of z_prime, on X_{2^m - 1}
  std::vector<Move> moves;
};

// Requires 2^m - 1 > i >= 1; throws ConstraintViolated otherwise.
FirstStep first_step(long i, long m);

struct InductionStep {
  Point z_doubleprime;  // on X_{2^m - 1}
  Point z_prime;        // on X_1
  std::vector<Move> moves;
};

// m = 1: the identity on X_1 at `from` (default: the X_1 point of first_step(1, 2)).
// m >= 2: z'' = (k=2, m+1, slope 1 - 2^{-m}) and its twin z' of slope 2^{-m};
// the moves start from `from` when given (it must lie on X_{2^m - 1}).
InductionStep induction_step(long m, std::optional<Point> from = std::nullopt);

// Hypotheses about a level 1 seed: its Hecke eigenvalue a_2 at weight k and
// the symmetric power dimension n.
struct Seed {
  Rational a_p;
  long k;
  long n;
};

struct ConnectOptions {
  std::optional<Seed> start_seed;
  std::optional<Seed> end_seed;
};

// Smallest a with 2^a - 1 > i.
long escape_exponent(long i);

// Walk X_{i_start} -> X_{2^a-1} -> X_1 -> X_{2^b-1} -> X_{i_end}.
Certificate connect(long i_start, long i_end, const ConnectOptions& options = {});

struct Violation {
  long move = -1;  // index into moves, or -1 for certificate-level problems
  std::string code;
  std::string message;
};

std::vector<Violation> verify_certificate(const Certificate& cert);

}  // namespace ppwalk::pingpong
