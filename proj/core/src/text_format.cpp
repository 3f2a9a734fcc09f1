#include "crsim/text_format.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace crsim {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view token, const std::string& what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument(what + ": invalid number '" + std::string(token) + "'");
  return value;
}

long long parse_integer(std::string_view token, const std::string& what) {
  long long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument(what + ": invalid integer '" + std::string(token) + "'");
  return value;
}

}  // namespace crsim
