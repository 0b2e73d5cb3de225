// Copyright 2026 The hrex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>

#include "hrex/error.hpp"
#include "hrex/http.hpp"

#include <cctype>

namespace hrex {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // "" or "/v1"
};

SplitUrl split_url(const std::string& url) {
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::InvalidArgument, "base url needs a scheme: " + url);
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  if (path_start == std::string::npos) {
    out.origin = url;
  } else {
    out.origin = url.substr(0, path_start);
    out.prefix = url.substr(path_start);
    while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  }
  return out;
}

}  // namespace

HttpReply post_json(const std::string& base_url, const std::string& path,
                    const std::map<std::string, std::string>& headers, const std::string& body,
                    std::chrono::milliseconds timeout) {
  const SplitUrl url = split_url(base_url);
  httplib::Client client(url.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto res = client.Post(url.prefix + path, h, body, "application/json");
  if (!res) {
    const httplib::Error err = res.error();
    const std::string what = httplib::to_string(err) + " (" + url.origin + ")";
    if (err == httplib::Error::Read || err == httplib::Error::Write ||
        err == httplib::Error::ConnectionTimeout) {
      throw Error(ErrorKind::BackendTimeout, what);
    }
    throw Error(ErrorKind::BackendFailure, what);
  }
  HttpReply reply;
  reply.status = res->status;
  reply.body = res->body;
  for (const auto& [k, v] : res->headers) {
    std::string name = k;
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    reply.headers[name] = v;
  }
  return reply;
}

}  // namespace hrex
