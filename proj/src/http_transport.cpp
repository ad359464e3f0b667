#include <httplib.h>

#include <charconv>

#include "oa2net/error.hpp"
#include "oa2net/openalex.hpp"

namespace oa2net {

namespace {

std::optional<double> parse_retry_after(const std::string& value) {
  double seconds = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seconds);
  if (ec != std::errc() || seconds < 0) return std::nullopt;  // HTTP-date form not supported
  return seconds;
}

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

  HttpResponse get(const std::string& url) override {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) fail(ErrorKind::InvalidArgument, "URL without scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    std::string origin = url.substr(0, path_start);
    std::string target = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_follow_location(true);

    HttpResponse out;
    auto res = client.Get(target);
    if (!res) {
      out.error = httplib::to_string(res.error());
      return out;
    }
    out.status = res->status;
    out.body = std::move(res->body);
    if (res->has_header("Retry-After")) {
      out.retry_after_seconds = parse_retry_after(res->get_header_value("Retry-After"));
    }
    return out;
  }

 private:
  std::chrono::seconds timeout_;
};

}  // namespace

std::shared_ptr<HttpTransport> make_http_transport(std::chrono::seconds timeout) {
  return std::make_shared<HttplibTransport>(timeout);
}

}  // namespace oa2net
