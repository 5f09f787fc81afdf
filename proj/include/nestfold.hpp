#pragma once

// Umbrella header: the whole library.

#include "nestfold/diagnostic.hpp"
#include "nestfold/ast.hpp"
#include "nestfold/lexer.hpp"
#include "nestfold/parser.hpp"
#include "nestfold/analysis.hpp"
#include "nestfold/term.hpp"
#include "nestfold/derivation.hpp"
#include "nestfold/emitter.hpp"
#include "nestfold/runtime.hpp"
#include "nestfold/catalogue.hpp"
#include "nestfold/properties.hpp"
