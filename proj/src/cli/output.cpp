#include <atomic>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include <unistd.h>

#include "cli/io.hpp"
#include "termtag/error.hpp"

namespace termtag::cli {
namespace {

std::string temporary_sibling(const std::string& path) {
  static std::atomic<unsigned> counter{0};
  return path + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
}

std::unique_ptr<std::ifstream> open_for_reading(const std::string& path) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw Error("cannot open '" + path + "' for reading");
  return file;
}

}  // namespace

OutputFile::OutputFile(std::string path, std::ostream& standard_output)
    : path_(std::move(path)), standard_output_(standard_output) {
  if (path_ == "-") return;
  temp_path_ = temporary_sibling(path_);
  file_.open(temp_path_, std::ios::binary | std::ios::trunc);
  if (!file_) throw Error("cannot open '" + path_ + "' for writing");
}

OutputFile::~OutputFile() {
  if (committed_ || temp_path_.empty()) return;
  file_.close();
  std::error_code ec;
  std::filesystem::remove(temp_path_, ec);
}

std::ostream& OutputFile::stream() {
  if (path_ == "-") return buffer_;
  return file_;
}

void OutputFile::commit() {
  if (committed_) return;
  if (path_ == "-") {
    standard_output_ << buffer_.str();
    standard_output_.flush();
    if (!standard_output_) throw Error("write to standard output failed");
    committed_ = true;
    return;
  }
  file_.flush();
  if (!file_) throw Error("write to '" + path_ + "' failed");
  file_.close();
  std::error_code ec;
  std::filesystem::rename(temp_path_, path_, ec);
  if (ec) throw Error("cannot move output into place at '" + path_ + "': " + ec.message());
  committed_ = true;
}

InputFile::InputFile(const std::string& path, std::istream& standard_input) {
  if (path == "-") {
    stream_ = &standard_input;
    return;
  }
  file_ = open_for_reading(path);
  stream_ = file_.get();
}

LineSource::LineSource(std::string path, std::istream& standard_input)
    : path_(std::move(path)), standard_input_(standard_input) {
  if (path_ == "-") {
    caching_ = true;
  } else {
    file_ = open_for_reading(path_);
  }
}

bool LineSource::next(std::string& line) {
  if (replaying_) {
    if (replay_ >= cache_.size()) return false;
    line = cache_[replay_++];
    return true;
  }
  std::istream& in = caching_ ? standard_input_ : *file_;
  if (!std::getline(in, line)) {
    if (in.bad()) throw Error("read error on '" + path_ + "'");
    return false;
  }
  if (caching_) cache_.push_back(line);
  return true;
}

void LineSource::rewind() {
  if (caching_) {
    // Drain what is left so the replay sees the whole stream.
    std::string line;
    while (!replaying_ && std::getline(standard_input_, line)) cache_.push_back(line);
    replaying_ = true;
    replay_ = 0;
    return;
  }
  file_ = open_for_reading(path_);
}

}  // namespace termtag::cli
