#pragma once

#include "braidqm/braid.hpp"
#include "braidqm/error.hpp"
#include "braidqm/flow.hpp"
#include "braidqm/formulas.hpp"
#include "braidqm/gambaudo_ghys.hpp"
#include "braidqm/invariants.hpp"
#include "braidqm/link_diagram.hpp"
#include "braidqm/loop_braid.hpp"
#include "braidqm/matrix.hpp"
#include "braidqm/monte_carlo.hpp"
#include "braidqm/polynomial.hpp"
#include "braidqm/quasimorphism.hpp"
#include "braidqm/reeb_extract.hpp"
#include "braidqm/reeb_tree.hpp"
#include "braidqm/signature.hpp"
