#pragma once

#include <cig/algebra.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace cig {

struct SuiteCheck
{
    std::string id;
    bool pass;
    std::string witness;
};

struct SuiteReport
{
    std::string name;
    std::vector<SuiteCheck> checks;

    auto passed() const -> bool;
    auto add(std::string id, bool pass, std::string witness = {}) -> void;
};

auto suite_names() -> std::vector<std::string>;

/// Runs a named suite against the bundled fixtures. Throws UnknownSuite.
auto run_suite(const std::string & name) -> SuiteReport;

/// Directory holding fig*.alg: $CIG_DATA_DIR if set, else the source tree's data/.
auto data_dir() -> std::filesystem::path;
auto load_fixture(const std::string & name) -> CayleyTable;
auto fixture_names() -> std::vector<std::string>;

/// One line per check ("PASS id  witness"), then a summary line.
auto format_text(const SuiteReport & report) -> std::string;
/// suite, id, PASS/FAIL, witness separated by tabs.
auto format_tsv(const SuiteReport & report) -> std::string;

} // namespace cig
