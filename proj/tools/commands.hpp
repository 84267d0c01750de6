#pragma once

#include "config.hpp"

#include "asymptotica/errors.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asymptotica::cli {

// A check the command ran came out negative (exit 1).
class CheckFailed : public Error {
 public:
  explicit CheckFailed(const std::string& message) : Error("CheckFailed", message) {}
  bool numerical() const noexcept override { return true; }
};

void lc_eval(const Config& c, const std::string& expr, std::ostream& out);
void lc_roots(const Config& c, const std::vector<std::string>& coeffs, std::ostream& out);

struct SampleRequest {
  int k = 0;  // 0: no samples
  std::string csv;  // empty: stdout
};
void mollifier_gen(const Config& c, std::optional<std::string> m, const std::string& out_path,
                   const SampleRequest& samples, std::ostream& out);
void mollifier_certify(const Config& c, const std::string& path, const SampleRequest& samples, std::ostream& out);

void gfunc_pair(const Config& c, const std::string& expr, const std::string& csv, std::ostream& out);
void gfunc_classify(const Config& c, const std::string& expr, const std::string& with, std::ostream& out);

void hb_extend(const Config& c, const std::string& space, const std::string& functional, const std::string& out_path,
               int probes, int samples, std::ostream& out);

// delta, hdelta, delta2, h2, hn, hb or all.
void demo(const Config& c, const std::string& which, std::ostream& out);
const std::vector<std::string>& demo_names();

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace asymptotica::cli
