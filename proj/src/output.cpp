#include "hlim/output.hpp"

#include <openssl/sha.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hlim/config.hpp"
#include "hlim/errors.hpp"

namespace hlim {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string git_blob_sha1(const std::string& content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob += content;
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : digest) {
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 15]);
  }
  return out;
}

void preflight_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  if (!std::filesystem::is_directory(dir)) throw IoError("output path is not a directory: " + dir.string());
  const auto probe = dir / ".hlim_write_probe";
  {
    std::ofstream out(probe, std::ios::binary);
    if (!out || !(out << "ok") || !out.flush()) throw IoError("output directory is not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string records_csv(const std::vector<BudgetRecord>& records) {
  std::ostringstream out;
  if (records.empty()) return "t\n";
  const BudgetRecord& first = records.front();
  out << "t";
  for (const auto& v : first.values) out << ',' << v.name;
  for (const auto& v : first.residuals) out << ',' << v.name;
  out << '\n';
  for (const auto& r : records) {
    if (r.values.size() != first.values.size() || r.residuals.size() != first.residuals.size())
      throw InputError("records_csv: records have different columns");
    out << format_double(r.t);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      if (r.values[i].name != first.values[i].name) throw InputError("records_csv: column mismatch");
      out << ',' << format_double(r.values[i].value);
    }
    for (const auto& v : r.residuals) out << ',' << format_double(v.value);
    out << '\n';
  }
  return out.str();
}

std::string rates_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "norm_id,eps,error,slope,residual\n";
  for (const auto& fit : sweep.fits) {
    for (const auto& r : sweep.reports) {
      const double e = r.failed ? std::nan("") : norm_error(r, fit.norm_id);
      out << fit.norm_id << ',' << format_double(r.eps) << ',' << format_double(e) << ','
          << format_double(fit.slope) << ',' << format_double(fit.residual) << '\n';
    }
  }
  return out.str();
}

std::string differences_csv(const std::vector<DiffReport>& reports) {
  std::ostringstream out;
  out << "eps,t,V_L2,eps_W_L2,grad_V_L2,eps_grad_W_L2,lap_V_L2,eps_lap_W_L2,W_L2,V_H1\n";
  for (const auto& r : reports) {
    for (const auto& s : r.samples) {
      out << format_double(r.eps) << ',' << format_double(s.t) << ',' << format_double(s.v_l2) << ','
          << format_double(s.eps_w_l2) << ',' << format_double(s.grad_v) << ',' << format_double(s.eps_grad_w)
          << ',' << format_double(s.lap_v) << ',' << format_double(s.eps_lap_w) << ',' << format_double(s.w_l2)
          << ',' << format_double(s.v_h1) << '\n';
    }
  }
  return out.str();
}

std::string pe_energy_csv(const PeEnergyAudit& a) {
  std::ostringstream out;
  out << "t,identity_residual,relative_residual,decay_slack,decay_ratio\n";
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    out << format_double(a.t[i]) << ',' << format_double(a.identity_residual[i]) << ','
        << format_double(a.relative_residual[i]) << ',' << format_double(a.decay_slack[i]) << ','
        << format_double(a.decay_ratio[i]) << '\n';
  }
  return out.str();
}

std::string sns_energy_csv(const SnsEnergyAudit& a) {
  std::ostringstream out;
  out << "t,slack,relative_slack\n";
  for (std::size_t i = 0; i < a.t.size(); ++i)
    out << format_double(a.t[i]) << ',' << format_double(a.slack[i]) << ',' << format_double(a.relative_slack[i])
        << '\n';
  return out.str();
}

nlohmann::ordered_json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

nlohmann::ordered_json manifest_base(const RunConfig& cfg) {
  const std::string canonical = canonical_config(cfg);
  nlohmann::ordered_json m;
  m["tool"] = "hlim";
  m["mode"] = to_string(cfg.mode);
  nlohmann::ordered_json echo;
  std::istringstream in(canonical);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    echo[line.substr(0, eq)] = line.substr(eq + 1);
  }
  m["config"] = echo;
  m["config_sha1"] = git_blob_sha1(canonical);
  return m;
}

std::string dump_manifest(const nlohmann::ordered_json& manifest) { return manifest.dump(2) + "\n"; }

}  // namespace hlim
