#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "slopecert/certify.hpp"

namespace slopecert {

// Field order is fixed so identical inputs produce byte-identical files.
using ordered_json = nlohmann::ordered_json;

inline ordered_json certificate_to_json(const Certificate& cert) {
  ordered_json j;
  j["m"] = cert.m;
  j["n"] = cert.n;
  j["p"] = cert.slope.p;
  j["q"] = cert.slope.q;
  j["branch"] = branch_name(cert.branch);
  if (!cert.is_betti()) {
    j["s"] = cert.s;
    j["t"] = cert.t;
    j["T"] = cert.T;
    j["A"] = cert.A;
    j["B"] = cert.B;
    j["sigma"] = cert.sigma;
    ordered_json r;
    r["riley"] = cert.residuals->riley;
    r["relator"] = cert.residuals->relator;
    r["longitude_offdiag"] = cert.residuals->longitude_offdiag;
    r["surgery_eq"] = cert.residuals->surgery_eq;
    r["det"] = cert.residuals->det;
    j["residuals"] = r;
  }
  j["precision_bits"] = cert.precision_bits;
  j["tolerance"] = cert.tolerance;
  j["spec_version"] = cert.spec_version;
  return j;
}

inline Certificate certificate_from_json(const ordered_json& j) {
  try {
    Certificate cert;
    cert.m = j.at("m").get<long long>();
    cert.n = j.at("n").get<long long>();
    cert.slope = Slope{j.at("p").get<long long>(), j.at("q").get<long long>()};
    cert.branch = branch_from_name(j.at("branch").get<std::string>());
    if (cert.branch != Branch::betti_zero) {
      cert.s = j.at("s").get<std::string>();
      cert.t = j.at("t").get<std::string>();
      cert.T = j.at("T").get<std::string>();
      cert.A = j.at("A").get<std::string>();
      cert.B = j.at("B").get<std::string>();
      cert.sigma = j.at("sigma").get<std::string>();
      const auto& r = j.at("residuals");
      cert.residuals = CertificateResiduals{
          r.at("riley").get<std::string>(), r.at("relator").get<std::string>(),
          r.at("longitude_offdiag").get<std::string>(), r.at("surgery_eq").get<std::string>(),
          r.at("det").get<std::string>()};
    }
    cert.precision_bits = j.at("precision_bits").get<int>();
    cert.tolerance = j.at("tolerance").get<std::string>();
    cert.spec_version = j.at("spec_version").get<std::string>();
    return cert;
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
}

inline std::string certificate_to_string(const Certificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

inline Certificate certificate_from_string(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
  return certificate_from_json(j);
}

inline void save_certificate(const std::string& path, const Certificate& cert) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << certificate_to_string(cert);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline Certificate load_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open certificate: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return certificate_from_string(text);
}

}  // namespace slopecert
