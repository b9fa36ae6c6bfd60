// CSV and JSON report writers.
#pragma once

#include <ostream>
#include <string>

#include "zlaw/scenario.hpp"

namespace zlaw {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// "pass", "fail" or "error".
std::string_view status(const VerificationReport& r);

/// Metadata as leading '#' lines, then the header
/// scenario,T,H,param_name,param_value,observed,predicted,ratio,error_budget,pass,n_evals,seconds
/// and one line per row. Multiple parameters are joined with ';'.
void write_csv(std::ostream& os, const RunResult& r);

/// {"metadata": {...}, "cells": [{...}, ...]}; non-finite numbers become null.
void write_json(std::ostream& os, const RunResult& r);

void write_report(std::ostream& os, const RunResult& r, Format format);

}  // namespace zlaw
