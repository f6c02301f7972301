#pragma once

#include "vasreach/coverability.hpp"
#include "vasreach/diophantine.hpp"
#include "vasreach/embedding.hpp"
#include "vasreach/error.hpp"
#include "vasreach/graph.hpp"
#include "vasreach/ideals.hpp"
#include "vasreach/io.hpp"
#include "vasreach/klmst.hpp"
#include "vasreach/mwgs.hpp"
#include "vasreach/omega.hpp"
#include "vasreach/oracle.hpp"
#include "vasreach/ordinal.hpp"
#include "vasreach/vas.hpp"
