# -*- coding: utf-8 -*-
"""
bench 패키지 초기화 파일
내장 벤치마크 생성기, 오라클, 실행기를 제공합니다.
"""
