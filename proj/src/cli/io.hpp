#pragma once

#include <fstream>
#include <iosfwd>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace termtag::cli {

// Output that only becomes visible on commit(). Files are written to a
// temporary sibling and renamed; "-" is buffered and copied to the standard
// stream on commit.
class OutputFile {
 public:
  OutputFile(std::string path, std::ostream& standard_output);
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;
  ~OutputFile();

  std::ostream& stream();
  void commit();

 private:
  std::string path_;
  std::string temp_path_;
  std::ostream& standard_output_;
  std::ofstream file_;
  std::ostringstream buffer_;
  bool committed_ = false;
};

// Opens a path for reading; "-" is the standard input stream.
class InputFile {
 public:
  InputFile(const std::string& path, std::istream& standard_input);
  std::istream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_;
};

// Line reader that can be replayed from the start. Files are reopened;
// standard input is cached on the first pass.
class LineSource {
 public:
  LineSource(std::string path, std::istream& standard_input);

  bool next(std::string& line);
  void rewind();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::istream& standard_input_;
  std::unique_ptr<std::ifstream> file_;
  bool caching_ = false;
  std::vector<std::string> cache_;
  std::size_t replay_ = 0;
  bool replaying_ = false;
};

}  // namespace termtag::cli
