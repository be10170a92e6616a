# -*- coding: utf-8 -*-
"""
tabling 패키지 초기화 파일
트라이, 작업 목록, 테이블 상태를 제공합니다.
"""
