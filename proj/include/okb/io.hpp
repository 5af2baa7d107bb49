#pragma once

#include "okb/minkowski.hpp"
#include "okb/threefold.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace okb {

using Json = nlohmann::ordered_json;

struct Instance {
    std::string name;
    std::string description;
    SurfaceData surface;
    FlagData flag;
    std::optional<ThreefoldData> threefold;
    Json golden;  // null when absent
};

struct ParseIssue {
    std::string field;  // e.g. "gram[1][0]" or "file.json:3:14"
    std::string message;
};

/// Malformed instance file; carries one entry per problem found.
class InstanceError : public InputError {
public:
    explicit InstanceError(std::vector<ParseIssue> issues);
    const std::vector<ParseIssue>& issues() const { return issues_; }

private:
    std::vector<ParseIssue> issues_;
};

Instance parse_instance(const Json& doc);
Instance load_instance(const std::filesystem::path& path);
/// Inverse of parse_instance for files in canonical form.
Json serialize_instance(const Instance& inst);

/// Integers as JSON numbers, everything else as "p/q" strings.
Json to_json(const Rational& q);
Json to_json(std::span<const Rational> v);
Json to_json(const Polygon2& p);
Rational rational_from_json(const Json& j, const std::string& field);
Vector vector_from_json(const Json& j, const std::string& field);

/// "3,-1,-1" or "1/2,0" in the instance basis.
Vector parse_divisor(std::string_view text, std::size_t rank);

}  // namespace okb
