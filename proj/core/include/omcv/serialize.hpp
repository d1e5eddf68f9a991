#pragma once

#include <string>

#include "json.hpp"
#include "omcv/densecoding.hpp"
#include "omcv/dynamics.hpp"
#include "omcv/gaussian.hpp"
#include "omcv/params.hpp"
#include "omcv/spectral.hpp"

namespace omcv {

// Shortest decimal that round-trips; identical bytes on every run.
std::string format_double(double v);

// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

nlohmann::json to_json(const PhysicalParams& p);
nlohmann::json to_json(const DerivedParams& d);
nlohmann::json to_json(const StabilityReport& s);
nlohmann::json to_json(const Mat6& m);
nlohmann::json to_json(const OutputCM& cm);
nlohmann::json to_json(const TwoModeBlock& b);
nlohmann::json to_json(const SymplecticPair& s);
nlohmann::json to_json(const RatePoint& r);
nlohmann::json conventions_json();

}  // namespace omcv
