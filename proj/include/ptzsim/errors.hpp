#pragma once

#include <stdexcept>
#include <string>

namespace ptzsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class MalformedPanorama : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class MissingGroundTruth : public DataError {
 public:
  using DataError::DataError;
};

class MalformedLine : public DataError {
 public:
  MalformedLine(int line_no, const std::string& what)
      : DataError("line " + std::to_string(line_no) + ": " + what), line_no_(line_no) {}
  int line_no() const { return line_no_; }

 private:
  int line_no_;
};

class NonMonotoneIndex : public DataError {
 public:
  using DataError::DataError;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class DegenerateBox : public Error {
 public:
  using Error::Error;
};

class InsufficientHistory : public Error {
 public:
  using Error::Error;
};

class EmptyTrace : public Error {
 public:
  using Error::Error;
};

}  // namespace ptzsim
