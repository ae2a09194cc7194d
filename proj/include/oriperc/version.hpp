#pragma once

#define ORIPERC_VERSION "0.1.0"
