// JSON forms of alphabets, automata, groups, balls, rewriting systems, flow
// tables and reports. Object keys are sorted and every list is emitted in a
// fixed order, so equal values always serialize to identical text.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "autostack/cprs.hpp"
#include "autostack/fftp.hpp"
#include "autostack/group.hpp"
#include "autostack/synclang.hpp"

namespace autostack::io {

using Json = nlohmann::json;

/// Malformed or inconsistent input.
class FormatError : public Error {
 public:
  using Error::Error;
};

Json to_json(Alphabet const& a);
Alphabet alphabet_from_json(Json const& j);

/// Words are arrays of letter names.
Json word_to_json(Alphabet const& a, Word const& w);
Word word_from_json(Alphabet const& a, Json const& j);

Json dfa_to_json(fsa::Dfa const& m, std::vector<std::string> const& symbols);
/// Checks the symbol list against `symbols`.
fsa::Dfa dfa_from_json(Json const& j, std::vector<std::string> const& symbols);

Json to_json(SyncLanguage const& l);
SyncLanguage sync_from_json(Json const& j);
/// Sorted [u, v, ...] tuples with padded length up to `max_len`.
Json tuples_to_json(SyncLanguage const& l, std::size_t max_len);

Json element_to_json(GroupSpec const& g, Element const& e);
Element element_from_json(GroupSpec const& g, Json const& j);

Json to_json(GroupSpec const& g);
GroupSpec group_from_json(Json const& j);

/// Array of {element, length, nf} in ball order.
Json to_json(Ball const& ball);

Json to_json(Cprs const& r);
Cprs cprs_from_json(Json const& j);

/// {bound, radius, order,
///  edges: [{element, nf, letter, label, fixed, alpha_endpoints}]}.
Json to_json(FlowTable const& ft, Ball const& ball);
/// The ball must be the one the table was written for.
FlowTable flow_from_json(Json const& j, Ball const& ball);

Json to_json(CheckResult const& r);
Json to_json(VerifyReport const& r);
Json to_json(GeoReport const& r);
Json to_json(FftpReport const& r, Alphabet const& a);
Json to_json(TheoremAReport const& r, Alphabet const& a);
Json to_json(BoundednessProfile const& p);
Json to_json(ConvexPath const& p, Alphabet const& a);

/// Two-space indented text with a trailing newline.
std::string dump(Json const& j);
Json load_file(std::filesystem::path const& path);
void save_file(std::filesystem::path const& path, Json const& j);

}  // namespace autostack::io
