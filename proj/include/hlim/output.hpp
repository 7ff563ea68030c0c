#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlim/diagnostics.hpp"
#include "hlim/harness.hpp"

namespace hlim {

struct RunConfig;

/// 17 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double x);

/// SHA-1 of "blob <size>\0" + content, as git hashes file contents.
std::string git_blob_sha1(const std::string& content);

/// Creates the directory if needed and checks that a file can be written
/// there.  Throws IoError.
void preflight_output_dir(const std::filesystem::path& dir);

/// Writes through a temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Header `t,<value names...>,<residual names...>`.  Throws InputError when
/// records disagree on their columns.
std::string records_csv(const std::vector<BudgetRecord>& records);

/// Header `norm_id,eps,error,slope,residual`; one row per norm id and eps.
std::string rates_csv(const SweepResult& sweep);

/// Difference norm time series of every report, tagged by eps.
std::string differences_csv(const std::vector<DiffReport>& reports);

std::string pe_energy_csv(const PeEnergyAudit& audit);
std::string sns_energy_csv(const SnsEnergyAudit& audit);

/// Config echo, hash of the canonical config and the mode-specific payload.
/// No timestamps, so equal inputs give equal manifests.
nlohmann::ordered_json manifest_base(const RunConfig& cfg);
std::string dump_manifest(const nlohmann::ordered_json& manifest);

/// JSON numbers cannot hold NaN; non-finite values go out as strings.
nlohmann::ordered_json json_number(double x);

}  // namespace hlim
