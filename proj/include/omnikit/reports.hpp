#pragma once

#include <omnikit/bounds.hpp>
#include <omnikit/construct.hpp>
#include <omnikit/experiments.hpp>
#include <omnikit/search.hpp>
#include <omnikit/verify.hpp>

#include <json.hpp>

/// JSON payloads emitted by the command-line tool. Every top-level object
/// carries "schema": "omnikit/1".
namespace omnikit::reports {

using nlohmann::json;

inline constexpr const char * schema = "omnikit/1";

[[nodiscard]] auto envelope(const char * kind) -> json;

[[nodiscard]] auto to_json(const MosaicMatrix & m) -> json;
[[nodiscard]] auto to_json(const RegionMap & rm) -> json;
[[nodiscard]] auto to_json(const GridDiagram & g) -> json;
[[nodiscard]] auto to_json(const Placement & p) -> json;
[[nodiscard]] auto to_json(const VerifyReport & r, bool timing) -> json;
[[nodiscard]] auto to_json(const SearchResult & r, bool timing) -> json;
[[nodiscard]] auto to_json(const bounds::BoundsReport & r) -> json;
[[nodiscard]] auto to_json(const bounds::LemmaReport & r) -> json;
[[nodiscard]] auto to_json(const MissingStats & s) -> json;
[[nodiscard]] auto to_json(const ExactStats & s) -> json;
[[nodiscard]] auto to_json(const ConjectureTable & t) -> json;
[[nodiscard]] auto to_json(const SuenInputs & s) -> json;

/// Exact rational as {"num": "...", "den": "...", "value": double}.
[[nodiscard]] auto to_json(const bounds::Rational & q) -> json;

} // namespace omnikit::reports
