#pragma once

#include "checker.hpp"
#include "corpus.hpp"
#include "formula.hpp"
#include "incarnation.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "report.hpp"
#include "text.hpp"
#include "validate.hpp"
