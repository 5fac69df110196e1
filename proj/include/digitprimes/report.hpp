#ifndef DIGITPRIMES_REPORT_HPP
#define DIGITPRIMES_REPORT_HPP

#include <chrono>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "digitprimes/circle.hpp"

namespace digitprimes {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Keys that vary between identical runs; strip_volatile removes them.
inline constexpr const char* kTimestampKey = "timestamp";
inline constexpr const char* kTimingsKey = "timings";

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// {"schema_version", "command", ...body, "timestamp", "timings"}.
Json make_report(const std::string& command, Json body, Json timings);

// Copy without timestamp and timings at any depth.
Json strip_volatile(const Json& report);

// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

Json to_json(const ExponentSet& e);
Json to_json(const Frequency& f);
Json to_json(const Rational& r);
Json to_json(const RationalApprox& r);
Json to_json(const L1Result& r);
Json to_json(const L1Sweep& s);
Json to_json(const LargeSieveResult& r);
Json to_json(const HybridResult& r);
Json to_json(const LinfRationalResult& r);
Json to_json(const LinfCharacterResult& r);
Json to_json(const InequalityCheck& c);
Json to_json(const SingleDigitReport& r);
Json to_json(const BoundFit& fit);
Json to_json(const InversionCheck& r);
Json to_json(const CharacterDecomposition& r);
Json to_json(const MinorArcReport& r);
Json to_json(const MainTermData& m);
Json to_json(const EstimateResult& r);
Json to_json(const ArcCounts& c);

// "k,theta,lhs", one row per sampled theta.
void write_l1_csv(std::ostream& os, const L1Sweep& sweep);

// "variant,terms,lhs,rhs,ratio".
void write_minor_arc_csv(std::ostream& os, const MinorArcReport& rep);

} // namespace digitprimes

#endif // DIGITPRIMES_REPORT_HPP
