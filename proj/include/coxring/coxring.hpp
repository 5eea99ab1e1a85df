#pragma once

#include "coxring/abgroup.hpp"
#include "coxring/bundled.hpp"
#include "coxring/cli.hpp"
#include "coxring/document.hpp"
#include "coxring/fixtures.hpp"
#include "coxring/galois.hpp"
#include "coxring/lattice.hpp"
#include "coxring/numfield.hpp"
#include "coxring/parse.hpp"
#include "coxring/polynomial.hpp"
#include "coxring/presentation.hpp"
#include "coxring/torsor.hpp"
#include "coxring/veronese.hpp"
