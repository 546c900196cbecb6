#pragma once

#include "afcm/error.hpp"
#include "afcm/inference.hpp"
#include "afcm/model.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace httplib {
class Server;
}

namespace afcm {

struct InferenceRequest
{
  Record attributes;
  std::string case_id = "Case9";
  std::optional<double> theta;
  std::optional<double> epsilon;
  std::optional<int> max_iterations;
  bool trajectory = false;
  std::size_t top = 8;
};

/// Invalid request. `fields` maps each offending field (attribute id, "case_id", ...)
/// to a message; rendered as HTTP 400 or CLI exit 2.
class RequestError : public Error
{
public:
  RequestError(std::string const &what, std::map<std::string, std::string> fields)
    : Error(what), fields_(std::move(fields))
  {
  }
  [[nodiscard]] std::map<std::string, std::string> const &fields() const noexcept { return fields_; }

private:
  std::map<std::string, std::string> fields_;
};

/// Accepts {"attributes": {...}, "case_id", "overrides": {theta, epsilon, max_iterations},
/// "trajectory", "top"}. Throws RequestError.
InferenceRequest parse_inference_request(nlohmann::json const &body);

/// Stateless request handling over one immutable model. Safe to share across threads.
class Service
{
public:
  explicit Service(FcmModel model);

  [[nodiscard]] FcmModel const &model() const noexcept { return model_; }

  /// Throws RequestError for unknown cases, attributes or values.
  [[nodiscard]] nlohmann::json infer(InferenceRequest const &request) const;

  /// {"base": request, "deltas": [{attr: value, ...}, ...]} -> {"results": [...]}; a delta
  /// that fails yields {"error", "fields"} in its slot.
  [[nodiscard]] nlohmann::json whatif(nlohmann::json const &body) const;

  [[nodiscard]] nlohmann::json describe_model() const;
  [[nodiscard]] nlohmann::json describe_cases() const;

  [[nodiscard]] CaseConfig resolve_case(InferenceRequest const &request) const;

private:
  FcmModel model_;
};

nlohmann::json error_body(RequestError const &e);

/// Registers the API routes and, when `static_dir` exists, the UI assets at "/".
void mount_routes(httplib::Server &server, Service const &service, std::string const &static_dir);

/// Command-line entry point. Returns the process exit status.
int run_cli(int argc, char const *const *argv, std::ostream &out, std::ostream &err);

} // namespace afcm
