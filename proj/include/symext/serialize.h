#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "symext/analytic.h"
#include "symext/bell_state.h"
#include "symext/distill.h"
#include "symext/qkd.h"
#include "symext/sdp.h"

namespace symext {

using Json = nlohmann::ordered_json;

/// 17 significant digits, '.' separator, "inf", "-inf" and "nan" for non-finite.
std::string format_double(double x);

/// Compact JSON (one line). Doubles are written with 17 significant digits;
/// infinities become the strings "+inf" / "-inf" and NaN becomes null.
std::string dump_json(const Json& j);

Json to_json(const BellProbs& p);
Json to_json(const AlphaCoords& a);
Json to_json(const HermMat& m);  // [[re, ...]] if real, else {"re":..,"im":..}
Json to_json(const ExtCertificate& c);
Json to_json(const LiftReport& r);
Json to_json(const SdpVerdict& v);
Json to_json(const TraceRecord& r);
Json to_json(const ScanRecord& r);

/// One JSON object per line: the step records, then {"terminated": ...}.
void write_jsonl(std::ostream& out, const DistillTrace& trace);

inline constexpr const char* kScanCsvHeader = "alpha1,alpha2,region,d_c,symext";

void write_csv(std::ostream& out, const std::vector<ScanRecord>& records);
void write_jsonl(std::ostream& out, const std::vector<ScanRecord>& records);

}  // namespace symext
