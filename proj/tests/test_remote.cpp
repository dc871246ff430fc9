#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "heckeq/errors.hpp"
#include "heckeq/remote.hpp"

using namespace heckeq;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = HECKEQ_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// serves the committed payload fixture on a loopback port; /bad returns
// JSON that fails validation, /broken is not JSON at all
class FixtureServer {
 public:
  FixtureServer() {
    payload_ = slurp(kFixtures + "/remote_payload.json");
    server_.Get("/api/newforms",
                [this](const httplib::Request&, httplib::Response& res) {
                  ++hits_;
                  res.set_content(payload_, "application/json");
                });
    server_.Get("/bad", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("{\"records\":[{\"level\":5}]}", "application/json");
    });
    server_.Get("/broken",
                [](const httplib::Request&, httplib::Response& res) {
                  res.set_content("this is not json", "application/json");
                });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FixtureServer() {
    server_.stop();
    thread_.join();
  }

  std::string url(const std::string& path = "/api/newforms") const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }
  int hits() const { return hits_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  std::string payload_;
  int port_ = 0;
  std::atomic<int> hits_{0};
};

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("heckeq-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter() {
    static int c = 0;
    return ++c;
  }
};

ingest::SpaceQuery query_n5() {
  ingest::SpaceQuery q;
  q.level_min = q.level_max = 5;
  q.weight_min = 4;
  q.weight_max = 4;
  q.p = 2;
  return q;
}

}  // namespace

TEST_CASE("fetch, cache, and offline replay") {
  FixtureServer server;
  TempDir tmp;

  ingest::RemoteOptions opts;
  opts.url = server.url();
  opts.cache_dir = tmp.path;

  auto q = query_n5();
  auto ds1 = ingest::fetch_remote(q, opts);
  REQUIRE(ds1.records.size() == 6);
  CHECK(server.hits() == 1);
  CHECK(fs::exists(ingest::cache_entry_path(q, opts)));

  // replay is served from the cache: byte-identical, no extra request
  opts.offline = true;
  auto ds2 = ingest::fetch_remote(q, opts);
  CHECK(ingest::serialize(ds2) == ingest::serialize(ds1));
  CHECK(server.hits() == 1);

  // cache also wins when the network is up
  opts.offline = false;
  ingest::fetch_remote(q, opts);
  CHECK(server.hits() == 1);
}

TEST_CASE("offline mode with a cold cache is a transport error") {
  TempDir tmp;
  ingest::RemoteOptions opts;
  opts.url = "http://127.0.0.1:9/api";  // never reached
  opts.cache_dir = tmp.path;
  opts.offline = true;
  CHECK_THROWS_AS(ingest::fetch_remote(query_n5(), opts), TransportError);
}

TEST_CASE("connection failure exhausts retries") {
  TempDir tmp;
  ingest::RemoteOptions opts;
  opts.url = "http://127.0.0.1:9/api";  // closed port
  opts.cache_dir = tmp.path;
  opts.max_retries = 2;
  CHECK_THROWS_AS(ingest::fetch_remote(query_n5(), opts), TransportError);
}

TEST_CASE("malformed payloads do not poison the cache") {
  FixtureServer server;
  TempDir tmp;

  for (const char* path : {"/bad", "/broken"}) {
    ingest::RemoteOptions opts;
    opts.url = server.url(path);
    opts.cache_dir = tmp.path;
    auto q = query_n5();
    CHECK_THROWS_AS(ingest::fetch_remote(q, opts), DataError);
    CHECK_FALSE(fs::exists(ingest::cache_entry_path(q, opts)));
  }
}

TEST_CASE("exceptional-space queries short-circuit to an empty dataset") {
  TempDir tmp;
  ingest::RemoteOptions opts;
  opts.url = "http://127.0.0.1:9/api";  // must never be contacted
  opts.cache_dir = tmp.path;
  opts.offline = true;                  // would throw if it tried the cache

  // chi mod 8 induced from the nontrivial character mod 4: conductor 4,
  // and 2 || 8/4, so dim S_k^new(8, k, chi) = 0 for every k
  auto chi = chars::DirichletCharacter(
      8, {chars::RootOfUnity::make(1, 2), chars::RootOfUnity::make(1, 2)});
  REQUIRE(chi.conductor() == 4);

  ingest::SpaceQuery q;
  q.level_min = q.level_max = 8;
  q.weight_min = 2;
  q.weight_max = 6;
  q.p = 3;
  q.character = chi;

  auto ds = ingest::fetch_remote(q, opts);
  CHECK(ds.records.empty());
  REQUIRE_FALSE(ds.warnings.empty());
  CHECK(ds.warnings[0].find("dim S_k^new") != std::string::npos);
}

TEST_CASE("remote options pick up config keys") {
  auto cfg = ingest::Config::parse(
      "[remote]\n"
      "url = http://db.example/api\n"
      "records = data\n"
      "field.lambda = lam\n"
      "[cache]\n"
      "dir = /tmp/somewhere\n");
  auto opts = ingest::RemoteOptions::from_config(cfg);
  CHECK(opts.url == "http://db.example/api");
  CHECK(opts.records_path == "data");
  CHECK(opts.field_lambda == "lam");
  CHECK(opts.cache_dir == fs::path("/tmp/somewhere"));
}
