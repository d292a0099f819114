#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from pdcontact import run

if __name__ == "__main__":
    run()
