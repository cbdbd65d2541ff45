#pragma once

#include "crautomata/error.hpp"
#include "crautomata/state_set.hpp"
#include "crautomata/dfa.hpp"
#include "crautomata/digraph.hpp"
#include "crautomata/canonical_words.hpp"
#include "crautomata/gamma.hpp"
#include "crautomata/witness.hpp"
#include "crautomata/oracle.hpp"
#include "crautomata/synchro.hpp"
#include "crautomata/generators.hpp"
#include "crautomata/io.hpp"
