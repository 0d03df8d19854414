#pragma once

#include "zsfast/errors.hpp"
#include "zsfast/fft.hpp"
#include "zsfast/oracle.hpp"
#include "zsfast/parallel.hpp"
#include "zsfast/periodic.hpp"
#include "zsfast/poly.hpp"
#include "zsfast/roots.hpp"
#include "zsfast/scattering.hpp"
#include "zsfast/schemes.hpp"
#include "zsfast/serial.hpp"
#include "zsfast/signal.hpp"
#include "zsfast/spectrum.hpp"
#include "zsfast/tableau.hpp"
