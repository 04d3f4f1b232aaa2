#include "voxql/store/atomic_file.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <random>
#include <string>

#include "voxql/error.hpp"

namespace voxql::store {

namespace fs = std::filesystem;

const char* to_string(IoStep step) {
  switch (step) {
    case IoStep::CreateTemp:
      return "create-temp";
    case IoStep::WriteFirstHalf:
      return "write-first-half";
    case IoStep::WriteSecondHalf:
      return "write-second-half";
    case IoStep::Sync:
      return "sync";
    case IoStep::Close:
      return "close";
    case IoStep::Rename:
      return "rename";
    case IoStep::SyncDirectory:
      return "sync-directory";
  }
  return "?";
}

namespace {

std::string nonce() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mutex);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  std::uint64_t bits = rng() ^ (static_cast<std::uint64_t>(::getpid()) << 40);
  for (int i = 0; i < 12; ++i, bits >>= 4) out += kHex[bits & 15];
  return out;
}

[[noreturn]] void fail(const std::string& what, const fs::path& path) {
  throw IoError(what + " " + path.string() + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view bytes, const fs::path& path) {
  while (!bytes.empty()) {
    const ssize_t n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("write", path);
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace

void atomic_write_file(const fs::path& target, std::string_view content, const FaultHook& hook) {
  auto step = [&](IoStep s) {
    if (hook) hook(s);
  };
  auto temp_name = [&] { return target.parent_path() / (target.filename().string() + ".tmp-" + nonce()); };
  fs::path temp = temp_name();
  int fd = -1;
  bool created = false;
  bool renamed = false;
  try {
    step(IoStep::CreateTemp);
    // A crashed writer can leave a stale temp file behind; pick another name.
    for (int attempt = 0; attempt < 8; ++attempt) {
      fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
      if (fd >= 0 || errno != EEXIST) break;
      temp = temp_name();
    }
    if (fd < 0) fail("create", temp);
    created = true;
    const std::size_t half = content.size() / 2;
    step(IoStep::WriteFirstHalf);
    write_all(fd, content.substr(0, half), temp);
    step(IoStep::WriteSecondHalf);
    write_all(fd, content.substr(half), temp);
    step(IoStep::Sync);
    if (::fsync(fd) != 0) fail("fsync", temp);
    step(IoStep::Close);
    const int rc = ::close(fd);
    fd = -1;
    if (rc != 0) fail("close", temp);
    step(IoStep::Rename);
    if (::rename(temp.c_str(), target.c_str()) != 0) fail("rename", temp);
    renamed = true;
    step(IoStep::SyncDirectory);
    const int dir = ::open(target.parent_path().c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
    if (dir >= 0) {
      ::fsync(dir);
      ::close(dir);
    }
  } catch (...) {
    if (fd >= 0) ::close(fd);
    if (created && !renamed) {
      std::error_code ec;
      fs::remove(temp, ec);
    }
    throw;
  }
}

}  // namespace voxql::store
