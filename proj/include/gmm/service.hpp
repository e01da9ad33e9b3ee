// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

// HTTP facade for the explorer: GET /tile, /classify and /loci. The handlers
// are pure functions of the query so they can be tested without a socket.

#pragma once

#include <map>
#include <memory>
#include <string>

namespace gmm {

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
  std::map<std::string, std::string> headers;
};

using Query = std::map<std::string, std::string>;

struct ServiceConfig {
  int render_workers = 0;          // threads per tile; 0 uses all cores
  int max_concurrent_renders = 0;  // 0 selects twice the hardware concurrency
  int max_px = 2048;
};

inline constexpr double kMinTileWidth = 1e-13;

/// kind=param (slice, n, a|b|t) or kind=julia (n, a, optional b); cx, cy, w,
/// px, optional py, budget, overlay. Answers 304 when if_none_match equals
/// the request's ETag.
HttpResponse handle_tile(const Query& q, const ServiceConfig& config = {},
                         const std::string& if_none_match = "");

/// Slice parameters as for /tile plus point=X,Y and budget.
HttpResponse handle_classify(const Query& q);

/// n (or inf for spine), kind=centers|spine, samples.
HttpResponse handle_loci(const Query& q);

class Server {
 public:
  explicit Server(ServiceConfig config = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds host:port; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); blocks.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gmm
