#pragma once

// Itemized verification reports and the certificate file format.

#include "pencil/bounds.hpp"
#include "pencil/pencilcert.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pencil {

using json = nlohmann::ordered_json;

enum class Status { Verified, Failed, Error };
std::string to_string(Status s);

struct ReportItem {
  std::string id;
  std::string claim;
  Status status = Status::Verified;
  json details = json::object();
};

inline ReportItem item(std::string id, std::string claim, bool ok, json details = json::object()) {
  return {std::move(id), std::move(claim), ok ? Status::Verified : Status::Failed, std::move(details)};
}

/// A certified member together with the pencil it belongs to; self-contained on disk.
struct CertifiedFiber {
  std::string label;
  Pencil pencil;
  FiberCertificate cert;
};

struct Report {
  std::string command;
  std::vector<ReportItem> items;
  std::vector<std::string> artifacts;
  std::vector<CertifiedFiber> certificates;
  std::string error;

  Status status() const;
  int exit_code() const;
  void add(ReportItem i) { items.push_back(std::move(i)); }
  void append(std::vector<ReportItem> more);
};

json to_json(const Report& r);
std::string to_markdown(const Report& r);

json to_json(const BoundReport& b);

json certificate_to_json(const CertifiedFiber& c);
CertifiedFiber certificate_from_json(const json& j);
json bundle_to_json(const std::vector<CertifiedFiber>& certs);
std::vector<CertifiedFiber> bundle_from_json(const json& j);

}  // namespace pencil
