#pragma once
// JSON views of the toolkit's results.

#include <string>

#include <json.hpp>

#include "bicolor/counting.hpp"
#include "bicolor/dynamics.hpp"
#include "bicolor/entanglement.hpp"
#include "bicolor/lattice.hpp"
#include "bicolor/spectra.hpp"

namespace bicolor {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolkitVersion = "1.0.0";

std::string to_string(const BigInt& n);
std::string to_string(const BigRational& q);
std::string hex_hash(std::uint64_t h);

Json to_json(const Geometry& g);
Json to_json(const WindingLabel& label);
Json to_json(const MoveGraphSummary& s, bool with_members = false);
Json to_json(const EigenReport& r);
Json to_json(const SchmidtSpectrum& s);
Json to_json(const ScalingFit& f);
Json to_json(const CountResult& r);
Json to_json(const TransferCount& t);
Json to_json(const EntropyBound& b);
Json to_json(const HypergeometricCheck& h);
Json to_json(const BlcAsymptotic& a);
Json to_json(const TowerScan& t);
Json to_json(const DefectFinding& f);
Json to_json(const SwapCheck& s);

}  // namespace bicolor
