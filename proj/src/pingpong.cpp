#include "ppwalk/pingpong.hpp"

#include "ppwalk/errors.hpp"
#include "ppwalk/spaces.hpp"

#include <algorithm>
#include <optional>

namespace ppwalk::pingpong {

using eigencurve::annulus_index;
using eigencurve::twin;
using weightspace::WeightCharacter;

namespace {

constexpr const char* kComponentAxiom = "same_annulus_same_component";
constexpr const char* kSlopeLaw = "boundary_slope_law";
constexpr const char* kDistinctSlopes = "distinct_slope_refinements";
constexpr const char* kSl2Image = "local_image_contains_sl2";

bool is_axiom(const std::string& id) { return id == kComponentAxiom || id == kSlopeLaw; }
bool is_seed(const std::string& id) { return id == "start_seed_n_regular" || id == "end_seed_n_regular"; }

std::optional<std::string> required_status(const std::string& id) {
  if (is_axiom(id)) return "axiom";
  if (id == kDistinctSlopes) return "discharged";
  // Nothing in the model can decide the image of Galois.
  if (id == kSl2Image) return "assumed";
  return std::nullopt;
}

std::string seed_detail(const Seed& s) {
  return "a_2=" + to_string(s.a_p) + ",k=" + std::to_string(s.k) + ",n=" + std::to_string(s.n);
}

// "discharged" or "refuted" for a detail of the form written by seed_detail.
std::optional<std::string> seed_status(const std::string& detail) {
  const auto a = detail.find("a_2="), k = detail.find(",k="), n = detail.find(",n=");
  if (a != 0 || k == std::string::npos || n == std::string::npos || n < k) return std::nullopt;
  try {
    const Rational ap = parse_rational(detail.substr(4, k - 4));
    const long wk = std::stol(detail.substr(k + 3, n - k - 3));
    const long nn = std::stol(detail.substr(n + 3));
    return spaces::is_n_regular(ap, wk, 2, nn) ? "discharged" : "refuted";
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// (2i + 2^{a+1} - 1, 0, 2i) with 2^a - 1 > i.
bool first_step_shape(const Point& pt) {
  if (pt.wc.m != 0 || !is_integral(pt.slope) || pt.slope <= 0 || pt.slope.get_num() % 2 != 0) return false;
  if (!pt.slope.get_num().fits_slong_p()) return false;
  const long i = pt.slope.get_num().get_si() / 2;
  const long rest = pt.wc.k - 2 * i + 1;  // 2^{a+1}
  if (rest < 4 || (rest & (rest - 1)) != 0) return false;
  return rest / 2 - 1 > i;
}

// (2, m + 1, 1 - 2^{-m}) with m >= 2.
bool induction_shape(const Point& pt) {
  const long m = pt.wc.m - 1;
  return pt.wc.k == 2 && m >= 2 && m <= 40 && pt.slope == 1 - rational_pow(2, -m);
}

Point boundary_point(long k, long m, Rational slope) {
  return Point{WeightCharacter{k, m}, std::move(slope), true, true};
}

long pow2(long e) { return 1L << e; }

// Both refinements have distinct slopes, which makes them n-regular for all n.
bool distinct_refinement_slopes(const Point& pt) { return 2 * pt.slope != pt.wc.k - 1; }

std::string point_key(const Point& pt) {
  return weightspace::to_string(pt.wc) + ",slope=" + to_string(pt.slope);
}

Assumption seed_assumption(const char* side, const std::optional<Seed>& seed) {
  if (!seed)
    return {std::string(side) + "_seed_n_regular", "assumed",
            "refinement of the level 1 seed is n-regular (no a_2 supplied)"};
  const bool ok = spaces::is_n_regular(seed->a_p, seed->k, 2, seed->n);
  return {std::string(side) + "_seed_n_regular", ok ? "discharged" : "refuted", seed_detail(*seed)};
}

}  // namespace

const char* move_kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::Start: return "start";
    case MoveKind::WithinAnnulus: return "within_annulus";
    case MoveKind::Twin: return "twin";
  }
  return "?";
}

const char* justification_name(Justification j) {
  switch (j) {
    case Justification::Propagation: return "lem_propagation";
    case Justification::SlopeOfTwinPoint: return "lem_slope_of_twin_point";
    case Justification::PingPong: return "lem_ping_pong";
    case Justification::FirstStep: return "lem_first_step";
    case Justification::InductionStep: return "lem_induction_step";
  }
  return "?";
}

MoveKind parse_move_kind(const std::string& s) {
  for (MoveKind k : {MoveKind::Start, MoveKind::WithinAnnulus, MoveKind::Twin})
    if (s == move_kind_name(k)) return k;
  throw Error(ErrorCode::ParseError, "unknown move kind '" + s + "'");
}

Justification parse_justification(const std::string& s) {
  for (Justification j : {Justification::Propagation, Justification::SlopeOfTwinPoint, Justification::PingPong,
                          Justification::FirstStep, Justification::InductionStep})
    if (s == justification_name(j)) return j;
  throw Error(ErrorCode::ParseError, "unknown justification '" + s + "'");
}

FirstStep first_step(long i, long m) {
  if (i < 1 || m < 1 || m > 40 || pow2(m) - 1 <= i)
    throw Error(ErrorCode::ConstraintViolated,
                "first step needs 2^m - 1 > i >= 1 (i=" + std::to_string(i) + ", m=" + std::to_string(m) + ")");
  const long k_prime = 2 * i + pow2(m + 1) - 1;
  FirstStep out{k_prime, boundary_point(k_prime, 0, Rational(2 * i)), {}, {}};
  out.z_doubleprime = twin(out.z_prime);
  out.moves = {{MoveKind::Start, out.z_prime, out.z_prime, Justification::FirstStep},
               {MoveKind::Twin, out.z_prime, out.z_doubleprime, Justification::PingPong}};
  return out;
}

InductionStep induction_step(long m, std::optional<Point> from) {
  if (m < 1 || m > 40) throw Error(ErrorCode::ConstraintViolated, "induction step needs 1 <= m <= 40");
  if (m == 1) {
    const Point z = from ? *from : first_step(1, 2).z_prime;
    return {z, z, {{MoveKind::WithinAnnulus, z, z, Justification::InductionStep}}};
  }
  const Point zdd = boundary_point(2, m + 1, 1 - rational_pow(2, -m));
  InductionStep out{zdd, twin(zdd), {}};
  if (from) {
    out.moves.push_back({MoveKind::WithinAnnulus, *from, zdd, Justification::Propagation});
  } else {
    out.moves.push_back({MoveKind::Start, zdd, zdd, Justification::InductionStep});
  }
  out.moves.push_back({MoveKind::Twin, zdd, out.z_prime, Justification::PingPong});
  return out;
}

long escape_exponent(long i) {
  long a = 1;
  while (pow2(a) - 1 <= i) ++a;
  return a;
}

Certificate connect(long i_start, long i_end, const ConnectOptions& options) {
  if (i_start < 1 || i_end < 1) throw Error(ErrorCode::InvalidArgument, "annulus indices start at 1");
  Certificate cert;
  cert.start_index = i_start;
  cert.end_index = i_end;

  // Outbound: onto X_1.
  Point here;
  if (i_start == 1) {
    here = first_step(1, escape_exponent(1)).z_prime;
    cert.moves.push_back({MoveKind::Start, here, here, Justification::FirstStep});
  } else {
    const long a = escape_exponent(i_start);
    const FirstStep fs = first_step(i_start, a);
    const InductionStep ind = induction_step(a, fs.z_doubleprime);
    cert.moves.insert(cert.moves.end(), fs.moves.begin(), fs.moves.end());
    cert.moves.insert(cert.moves.end(), ind.moves.begin(), ind.moves.end());
    here = ind.z_prime;
  }

  // Inbound: the end side's construction, walked backwards.
  if (i_end == 1) {
    if (cert.moves.size() == 1) {
      const auto id = induction_step(1, here).moves;
      cert.moves.insert(cert.moves.end(), id.begin(), id.end());
    }
  } else {
    const long b = escape_exponent(i_end);
    const FirstStep fs = first_step(i_end, b);
    const InductionStep ind = induction_step(b, fs.z_doubleprime);
    cert.moves.push_back({MoveKind::WithinAnnulus, here, ind.z_prime,
                          here == ind.z_prime ? Justification::InductionStep : Justification::Propagation});
    cert.moves.push_back({MoveKind::Twin, ind.z_prime, ind.z_doubleprime, Justification::PingPong});
    cert.moves.push_back({MoveKind::WithinAnnulus, ind.z_doubleprime, fs.z_doubleprime, Justification::Propagation});
    cert.moves.push_back({MoveKind::Twin, fs.z_doubleprime, fs.z_prime, Justification::PingPong});
  }

  cert.assumptions = {
      {kComponentAxiom, "axiom", "points of one boundary annulus X_i lie on a common irreducible component"},
      {kSlopeLaw, "axiom", "classical points of X_i have slope i * v(w)"},
      {kDistinctSlopes, "discharged",
       "every within-annulus endpoint has slope != (k-1)/2, so its refinements are n-regular for all n"},
      {kSl2Image, "assumed", "Zariski closure of the local Galois image contains SL_2"},
      seed_assumption("start", options.start_seed),
      seed_assumption("end", options.end_seed),
  };
  return cert;
}

std::vector<Violation> verify_certificate(const Certificate& cert) {
  std::vector<Violation> out;
  auto flag = [&](long move, std::string code, std::string message) {
    out.push_back({move, std::move(code), std::move(message)});
  };

  if (cert.schema != kCertificateSchema) flag(-1, "SchemaMismatch", "schema " + std::to_string(cert.schema));
  if (cert.moves.empty()) {
    flag(-1, "Empty", "certificate has no moves");
    return out;
  }

  bool has_axiom = false;
  std::vector<std::string> regular_points;
  std::vector<std::string> seen;
  for (const auto& a : cert.assumptions) {
    seen.push_back(a.id);
    if (a.id == kComponentAxiom && a.status == "axiom") has_axiom = true;
    if (a.status != "axiom" && a.status != "assumed" && a.status != "discharged" && a.status != "refuted") {
      flag(-1, "BadAssumption", a.id + " has status '" + a.status + "'");
      continue;
    }
    if (a.status == "refuted") flag(-1, "RefutedAssumption", a.id + ": " + a.detail);
    if (const auto want = required_status(a.id); want && a.status != *want)
      flag(-1, "BadAssumption", a.id + " must be " + *want + ", not " + a.status);
    if (a.status == "axiom" && !is_axiom(a.id)) flag(-1, "BadAssumption", a.id + " is not an axiom of the model");
    if (is_seed(a.id) && (a.status == "discharged" || a.status == "refuted")) {
      const auto recomputed = seed_status(a.detail);
      if (!recomputed)
        flag(-1, "BadAssumption", a.id + ": detail does not name a seed");
      else if (*recomputed != a.status)
        flag(-1, "BadAssumption", a.id + " recomputes as " + *recomputed);
    }
    if (a.id.rfind("n_regular_point:", 0) == 0 && (a.status == "assumed" || a.status == "discharged"))
      regular_points.push_back(a.id.substr(16));
  }
  for (const char* id : {kComponentAxiom, kSlopeLaw, kDistinctSlopes, kSl2Image})
    if (std::find(seen.begin(), seen.end(), id) == seen.end()) flag(-1, "MissingAssumption", id);

  // Index of a point on its annulus, recording a violation on failure.
  auto index_of = [&](long j, const Point& pt, const char* role) -> std::optional<long> {
    try {
      eigencurve::validate(pt);
      return annulus_index(pt);
    } catch (const Error& e) {
      flag(j, error_name(e.code()), std::string(role) + ": " + e.what());
      return std::nullopt;
    }
  };
  auto check_classical = [&](long j, const Point& pt, const char* role) {
    if (!pt.classical || eigencurve::classify(pt).kind == eigencurve::Classicality::Neither)
      flag(j, "NotClassical", std::string(role) + " is not a classical point (" + point_key(pt) + ")");
  };
  auto check_regular = [&](long j, const Point& pt, const char* role) {
    if (distinct_refinement_slopes(pt)) return;
    if (std::find(regular_points.begin(), regular_points.end(), point_key(pt)) != regular_points.end()) return;
    flag(j, "NotRegular", std::string(role) + " has equal refinement slopes and no regularity assumption");
  };

  for (std::size_t idx = 0; idx < cert.moves.size(); ++idx) {
    const long j = static_cast<long>(idx);
    const Move& mv = cert.moves[idx];
    if (idx > 0 && !(cert.moves[idx - 1].to == mv.from))
      flag(j, "ChainBroken", "from does not equal the previous move's to");

    switch (mv.kind) {
      case MoveKind::Start: {
        if (idx != 0) flag(j, "BadStart", "start move must come first");
        if (!(mv.from == mv.to)) flag(j, "StartMismatch", "start move must not change the point");
        if (mv.justification == Justification::FirstStep) {
          if (!first_step_shape(mv.from)) flag(j, "BadStartPoint", "not the X_i point of a first step");
        } else if (mv.justification == Justification::InductionStep) {
          if (!induction_shape(mv.from)) flag(j, "BadStartPoint", "not the z'' point of an induction step");
        } else {
          flag(j, "BadJustification", justification_name(mv.justification));
        }
        index_of(j, mv.from, "start point");
        check_classical(j, mv.from, "start point");
        break;
      }
      case MoveKind::WithinAnnulus: {
        if (idx == 0) flag(j, "BadStart", "first move must be a start move");
        if (!has_axiom) flag(j, "MissingAxiom", std::string(kComponentAxiom) + " is not declared");
        if (mv.justification == Justification::InductionStep) {
          if (!(mv.from == mv.to)) flag(j, "IdentityExpected", "the m = 1 induction step is the identity");
        } else if (mv.justification == Justification::Propagation) {
          if (mv.from == mv.to) flag(j, "BadJustification", "an identity move is the m = 1 induction step");
        } else {
          flag(j, "BadJustification", justification_name(mv.justification));
        }
        const auto i_from = index_of(j, mv.from, "from");
        const auto i_to = index_of(j, mv.to, "to");
        if (i_from && i_to && *i_from != *i_to)
          flag(j, "AnnulusChanged", "X_" + std::to_string(*i_from) + " -> X_" + std::to_string(*i_to));
        check_classical(j, mv.from, "from");
        check_classical(j, mv.to, "to");
        check_regular(j, mv.from, "from");
        check_regular(j, mv.to, "to");
        break;
      }
      case MoveKind::Twin: {
        if (idx == 0) flag(j, "BadStart", "first move must be a start move");
        if (mv.justification != Justification::PingPong)
          flag(j, "BadJustification", justification_name(mv.justification));
        if (!mv.from.pc) {
          flag(j, error_name(ErrorCode::NotPotentiallyCrystalline), "twin of a point that is not pc");
          break;
        }
        const auto i_from = index_of(j, mv.from, "from");
        const auto i_to = index_of(j, mv.to, "to");
        try {
          if (!(twin(mv.from) == mv.to)) flag(j, "TwinMismatch", "to is not the twin of from");
          if (i_from && !eigencurve::twin_index_sum_check(mv.from))
            flag(j, "IndexSumFailed", "i + i' differs from (k-1)/v(w)");
        } catch (const Error& e) {
          flag(j, error_name(e.code()), e.what());
        }
        (void)i_to;
        break;
      }
    }
  }

  try {
    if (annulus_index(cert.moves.front().from) != cert.start_index)
      flag(-1, "EndpointMismatch", "start index " + std::to_string(cert.start_index));
  } catch (const Error& e) {
    flag(-1, "EndpointMismatch", e.what());
  }
  try {
    if (annulus_index(cert.moves.back().to) != cert.end_index)
      flag(-1, "EndpointMismatch", "end index " + std::to_string(cert.end_index));
  } catch (const Error& e) {
    flag(-1, "EndpointMismatch", e.what());
  }
  return out;
}

}  // namespace ppwalk::pingpong
