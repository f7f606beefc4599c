#pragma once
/**
 * @brief Fixture corpus: parsing and the cross-engine consistency run.
 */

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "detpol/config.hpp"

namespace detpol {

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One line "id ; alphabet ; regex ; CLASS=0|1 ...".
struct Fixture {
    std::string id;
    Alphabet alphabet;
    std::string regex;
    std::map<std::string, bool> expected;
    std::string source;  ///< file:line
};

std::vector<Fixture> parse_corpus(std::istream& in, const std::string& source);
std::vector<Fixture> load_corpus(const std::string& path);  ///< a file or every *.txt in a directory
std::string format_fixture(const Fixture& f);

/// Classes whose membership is recorded for every fixture.
const std::vector<std::string>& corpus_classes();
/// Classes checked against separation from the complement.
const std::vector<std::string>& corpus_bridge_classes();

struct FixtureResult {
    std::string id;
    std::map<std::string, bool> member;
    std::vector<std::string> failures;
};

struct CorpusSummary {
    std::vector<FixtureResult> rows;
    bool passed() const;
    std::size_t failure_count() const;
};

FixtureResult check_fixture(const Fixture& f, const Limits& lim);
CorpusSummary run_corpus(const std::vector<Fixture>& fixtures, const Limits& lim, int jobs);

}  // namespace detpol
