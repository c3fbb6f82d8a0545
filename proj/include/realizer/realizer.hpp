#pragma once

#include "realizer/cli.hpp"
#include "realizer/extract.hpp"
#include "realizer/harness.hpp"
#include "realizer/logic.hpp"
#include "realizer/logic_syntax.hpp"
#include "realizer/proof.hpp"
#include "realizer/proof_script.hpp"
#include "realizer/reduce.hpp"
#include "realizer/sexpr.hpp"
#include "realizer/syntax.hpp"
#include "realizer/term.hpp"
#include "realizer/term_syntax.hpp"
